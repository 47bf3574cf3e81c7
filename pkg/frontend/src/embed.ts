/**
 * Deterministic sentence embeddings via signed feature hashing.
 *
 * Each lowercased whitespace token is hashed into a fixed-dimension vector
 * with a sign bit drawn from a second hash, giving sparse term-frequency
 * embeddings that behave like a (very cheap) bag-of-words encoder: identical
 * sentences embed identically, disjoint vocabularies are near-orthogonal,
 * and similarity is symmetric. Swappable for a real encoder behind the same
 * interface.
 */

export interface Embedder {
  readonly id: string;
  embed(text: string): Float64Array;
}

/** 32-bit FNV-1a hash; stable across platforms. */
export function fnv1a(text: string, seed = 0x811c9dc5): number {
  let hash = seed >>> 0;
  for (let i = 0; i < text.length; i += 1) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return hash >>> 0;
}

export function tokenize(text: string): string[] {
  return text.toLowerCase().split(/\s+/).filter((t) => t.length > 0);
}

export class HashedTfEmbedder implements Embedder {
  readonly id: string;
  readonly dimension: number;

  constructor(dimension = 256) {
    if (!Number.isInteger(dimension) || dimension < 8) {
      throw new Error(`embedding dimension must be an integer >= 8, got ${dimension}`);
    }
    this.dimension = dimension;
    this.id = `hash-tf-${dimension}`;
  }

  embed(text: string): Float64Array {
    const vec = new Float64Array(this.dimension);
    for (const token of tokenize(text)) {
      const index = fnv1a(token) % this.dimension;
      const sign = fnv1a(token, 0x9747b28c) % 2 === 0 ? 1 : -1;
      vec[index] += sign;
    }
    return vec;
  }
}

export function cosine(a: Float64Array, b: Float64Array): number {
  if (a.length !== b.length) {
    throw new Error("embedding dimension mismatch");
  }
  let dot = 0;
  let a2 = 0;
  let b2 = 0;
  for (let i = 0; i < a.length; i += 1) {
    dot += a[i] * b[i];
    a2 += a[i] * a[i];
    b2 += b[i] * b[i];
  }
  const denom = Math.sqrt(a2) * Math.sqrt(b2);
  return denom === 0 ? 0 : dot / denom;
}

/** Cosine mapped affinely onto [0, 1]: identical texts score 1, opposites 0. */
export function similarity(embedder: Embedder, a: string, b: string): number {
  if (a === b) {
    return 1; // exact reflexivity regardless of floating-point round-off
  }
  const score = (1 + cosine(embedder.embed(a), embedder.embed(b))) / 2;
  return Math.min(1, Math.max(0, score));
}

export function createEmbedder(model: string): Embedder {
  const match = /^hash-tf-(\d+)$/.exec(model);
  if (model === "hash-tf") {
    return new HashedTfEmbedder();
  }
  if (match) {
    return new HashedTfEmbedder(Number(match[1]));
  }
  throw new Error(`unknown model ${JSON.stringify(model)}; expected hash-tf[-<dim>]`);
}
