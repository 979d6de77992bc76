/**
 * The extractor's binary matrix format.
 *
 * Layout: magic "SYNF", format version (u16), row count (u64), column
 * count (u64), then row-major float32 values; everything little-endian.
 */

import { readFileSync } from "node:fs";

export const MAGIC = "SYNF";
export const FORMAT_VERSION = 1;
export const HEADER_BYTES = 4 + 2 + 8 + 8;

/** A contiguous group of columns with one meaning. */
export interface ColumnBlock {
  name: string;
  offset: number;
  width: number;
  labels: string[] | null;
}

/** A decoded matrix without schema information. */
export interface RawMatrix {
  rows: number;
  cols: number;
  /** Row-major values; length is rows * cols. */
  data: Float32Array;
}

/** A feature matrix together with its column schema. */
export interface BoundMatrix extends RawMatrix {
  blocks: ColumnBlock[];
}

export function parseMatrixBuffer(buffer: Buffer): RawMatrix {
  if (buffer.length < HEADER_BYTES) {
    throw new Error(`truncated header: ${buffer.length} bytes`);
  }
  const magic = buffer.toString("latin1", 0, 4);
  if (magic !== MAGIC) {
    throw new Error(`bad magic ${JSON.stringify(magic)}`);
  }
  const version = buffer.readUInt16LE(4);
  if (version !== FORMAT_VERSION) {
    throw new Error(`unsupported format version ${version}`);
  }
  const rows = Number(buffer.readBigUInt64LE(6));
  const cols = Number(buffer.readBigUInt64LE(14));
  const expected = HEADER_BYTES + rows * cols * 4;
  if (buffer.length !== expected) {
    throw new Error(`payload is ${buffer.length - HEADER_BYTES} bytes, expected ${rows * cols * 4}`);
  }
  // Copy out of the file buffer so the typed array owns aligned memory.
  const payload = buffer.subarray(HEADER_BYTES);
  const data = new Float32Array(rows * cols);
  for (let i = 0; i < data.length; i++) {
    data[i] = payload.readFloatLE(i * 4);
  }
  return { rows, cols, data };
}

/** Read a matrix file produced by the extractor (`--format bin`). */
export function loadMatrix(path: string): RawMatrix {
  return parseMatrixBuffer(readFileSync(path));
}

export function withSchema(matrix: RawMatrix, blocks: ColumnBlock[]): BoundMatrix {
  const width = blocks.reduce((sum, b) => sum + b.width, 0);
  if (width !== matrix.cols) {
    throw new Error(`schema widths sum to ${width}, matrix has ${matrix.cols} columns`);
  }
  return { ...matrix, blocks };
}

/** One name per column, mirroring the extractor's CSV headers. */
export function columnNames(blocks: ColumnBlock[]): string[] {
  const names: string[] = [];
  for (const block of blocks) {
    if (block.labels !== null) {
      for (const label of block.labels) names.push(`${block.name}:${label}`);
    } else if (block.width === 1) {
      names.push(block.name);
    } else {
      for (let i = 0; i < block.width; i++) names.push(`${block.name}:${i}`);
    }
  }
  return names;
}

export function rowOf(matrix: RawMatrix, row: number): Float32Array {
  if (row < 0 || row >= matrix.rows) {
    throw new Error(`row ${row} out of range 0..${matrix.rows - 1}`);
  }
  return matrix.data.subarray(row * matrix.cols, (row + 1) * matrix.cols);
}
