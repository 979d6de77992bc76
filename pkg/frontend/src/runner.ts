/**
 * Runs the extractor CLI in a scratch directory.
 *
 * The command defaults to `python3 -m synfeat` and can be overridden with
 * the SYNFEAT_CLI environment variable (whitespace-separated). Failures
 * surface the CLI's stderr verbatim.
 */

import { spawnSync } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export function cliCommand(): string[] {
  const raw = process.env.SYNFEAT_CLI ?? "python3 -m synfeat";
  const parts = raw.split(/\s+/).filter((p) => p.length > 0);
  if (parts.length === 0) {
    throw new Error("SYNFEAT_CLI is empty");
  }
  return parts;
}

export function runCli(args: string[]): void {
  const [command, ...prefix] = cliCommand();
  const result = spawnSync(command, [...prefix, ...args], { encoding: "utf-8" });
  if (result.error) {
    throw new Error(`failed to run ${command}: ${result.error.message}`);
  }
  if (result.status !== 0) {
    const stderr = (result.stderr ?? "").trim();
    throw new Error(stderr || `extractor exited with status ${result.status}`);
  }
}

/** Creates a scratch dir, hands it to `body`, and always cleans up. */
export function inScratchDir<T>(body: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "synfeat-"));
  try {
    return body(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

export function writeTreeFile(dir: string, treeText: string): string {
  const path = join(dir, "tree.txt");
  writeFileSync(path, treeText.endsWith("\n") ? treeText : treeText + "\n", "utf-8");
  return path;
}
