/**
 * Deterministic offline embedder: character n-gram feature hashing.
 *
 * Codepoint 1- to 3-grams (with boundary markers) are FNV-1a hashed
 * into a fixed number of buckets and counted. Vectors are written
 * unnormalized; the engine's cosine handles normalization. Output is a
 * pure function of the text, so re-runs are bit-identical. Not a
 * semantic model: it exists for offline pipelines, fixtures and tests.
 */

const FNV_OFFSET = 0x811c9dc5;
const FNV_PRIME = 0x01000193;

function fnv1a(text: string): number {
  let hash = FNV_OFFSET;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, FNV_PRIME) >>> 0;
  }
  return hash >>> 0;
}

export function hashEmbed(text: string, dim: number): number[] {
  if (dim < 2) {
    throw new Error(`embedding dimension must be >= 2, got ${dim}`);
  }
  const chars = ["^", ...Array.from(text), "$"];
  const vector = new Array<number>(dim).fill(0);
  for (let n = 1; n <= 3; n++) {
    for (let i = 0; i + n <= chars.length; i++) {
      const gram = `${n}:` + chars.slice(i, i + n).join("");
      vector[fnv1a(gram) % dim] += 1;
    }
  }
  return vector;
}
