/**
 * Thin bindings over the synfeat extractor.
 *
 * Every call shells out to the CLI (the extractor's public surface), so
 * matrices are bit-for-bit what a batch run would produce; the binary
 * payload is decoded into a Float32Array together with the manifest's
 * column schema. Inputs are copied into a scratch directory per call and
 * nothing is shared between calls.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";

import {
  BoundMatrix,
  ColumnBlock,
  loadMatrix,
  withSchema,
} from "./matrix";
import { inScratchDir, runCli, writeTreeFile } from "./runner";

export {
  BoundMatrix,
  ColumnBlock,
  RawMatrix,
  columnNames,
  loadMatrix,
  parseMatrixBuffer,
  rowOf,
} from "./matrix";

export type Direction = "top-down" | "bottom-up";

export interface ExtractOptions {
  features?: "psf" | "wrf" | "both";
  /** Tree levels per word for phrase-structure features (default 10). */
  levels?: number;
  direction?: Direction;
  posInventoryPath?: string;
  phraseInventoryPath?: string;
  buildInventories?: boolean;
  lexiconPath?: string;
  outputLevel?: "word" | "phoneme";
  unknownLabels?: "error" | "zero";
  oov?: "error" | "letters" | "skip";
  projectionSeed?: number;
  projectionDim?: number;
}

function cliArgs(options: ExtractOptions): string[] {
  const args: string[] = [];
  if (options.features) args.push("--features", options.features);
  if (options.levels !== undefined) args.push("--levels", String(options.levels));
  if (options.direction) args.push("--direction", options.direction);
  if (options.posInventoryPath) args.push("--pos-inventory", options.posInventoryPath);
  if (options.phraseInventoryPath) args.push("--phrase-inventory", options.phraseInventoryPath);
  if (options.buildInventories) args.push("--build-inventories");
  if (options.lexiconPath) args.push("--lexicon", options.lexiconPath);
  if (options.outputLevel) args.push("--output-level", options.outputLevel);
  if (options.unknownLabels) args.push("--unknown-labels", options.unknownLabels);
  if (options.oov) args.push("--oov", options.oov);
  if (options.projectionSeed !== undefined) args.push("--projection-seed", String(options.projectionSeed));
  if (options.projectionDim !== undefined) args.push("--projection-dim", String(options.projectionDim));
  return args;
}

interface Manifest {
  schema: { blocks: ColumnBlock[] };
  columns: number;
}

/** Extract features for one bracketed tree as a schema-tagged matrix. */
export function extract(treeText: string, options: ExtractOptions = {}): BoundMatrix {
  return inScratchDir((dir) => {
    const input = writeTreeFile(dir, treeText);
    const output = join(dir, "out.bin");
    runCli(["-i", input, "-o", output, "--format", "bin", ...cliArgs(options)]);
    const manifest = JSON.parse(readFileSync(output + ".manifest.json", "utf-8")) as Manifest;
    return withSchema(loadMatrix(output), manifest.schema.blocks);
  });
}

/** Phrase-structure features: POS plus per-level label/boundary/position. */
export function extractPsf(
  treeText: string,
  options: Pick<ExtractOptions, "levels" | "direction" | "posInventoryPath" | "phraseInventoryPath" | "unknownLabels"> = {},
): BoundMatrix {
  return extract(treeText, { ...options, features: "psf" });
}

/** Word-relation features: POS, junction phrases, LCA, tree distances. */
export function extractWrf(
  treeText: string,
  options: Pick<ExtractOptions, "posInventoryPath" | "phraseInventoryPath" | "unknownLabels"> = {},
): BoundMatrix {
  return extract(treeText, { ...options, features: "wrf" });
}

export interface ParsedTree {
  /** Sentence tokens in order; punctuation counts as a word. */
  words: string[];
  /** Canonical single-line bracketed serialization. */
  tree: string;
}

/** Parse and normalize one bracketed tree via the extractor. */
export function parseBracketed(treeText: string): ParsedTree {
  return inScratchDir((dir) => {
    const input = writeTreeFile(dir, treeText);
    const output = join(dir, "out.jsonl");
    runCli(["-i", input, "-o", output, "--features", "wrf", "--format", "json"]);
    const record = JSON.parse(readFileSync(output, "utf-8").trim().split("\n")[0]);
    return { words: record.words as string[], tree: record.tree as string };
  });
}

/** Word features repeated once per phoneme from a pronunciation lexicon. */
export function phonemizeUpsample(
  treeText: string,
  lexiconPath: string,
  options: Omit<ExtractOptions, "lexiconPath" | "outputLevel"> = {},
): BoundMatrix {
  return extract(treeText, { ...options, lexiconPath, outputLevel: "phoneme" });
}

/** Seeded affine + ReLU projection of the extracted rows (default 256 wide). */
export function projectRelu(
  treeText: string,
  seed: number,
  options: Omit<ExtractOptions, "projectionSeed"> = {},
): BoundMatrix {
  return extract(treeText, { ...options, projectionSeed: seed });
}
