/**
 * Model registry. Two families:
 *
 *   hashgram-<dim>   deterministic offline hashing embedder
 *   http:<base-url>  any service speaking POST /embed
 *                    {"texts": [...]} -> {"embeddings": [[...], ...]}
 *
 * Real embedding models (the recommended production setup is a served
 * Qwen3-Embedding-0.6B) plug in through the http bridge.
 */

import { hashEmbed } from "./hashModel.js";

export interface Embedder {
  readonly id: string;
  embed(texts: readonly string[]): Promise<number[][]>;
}

class HashgramEmbedder implements Embedder {
  constructor(readonly id: string, private readonly dim: number) {}

  async embed(texts: readonly string[]): Promise<number[][]> {
    return texts.map((t) => hashEmbed(t, this.dim));
  }
}

class HttpEmbedder implements Embedder {
  private readonly url: string;

  constructor(readonly id: string, baseUrl: string) {
    this.url = baseUrl.replace(/\/+$/, "") + "/embed";
  }

  async embed(texts: readonly string[]): Promise<number[][]> {
    const response = await fetch(this.url, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ texts }),
    });
    if (!response.ok) {
      throw new Error(`embedding service returned ${response.status}`);
    }
    const payload = (await response.json()) as { embeddings?: number[][] };
    if (!Array.isArray(payload.embeddings) || payload.embeddings.length !== texts.length) {
      throw new Error("embedding service returned a malformed response");
    }
    return payload.embeddings;
  }
}

export function resolveModel(id: string): Embedder {
  const hashgram = id.match(/^hashgram-(\d+)$/);
  if (hashgram) {
    return new HashgramEmbedder(id, Number(hashgram[1]));
  }
  if (id.startsWith("http:") || id.startsWith("https:")) {
    return new HttpEmbedder(id, id);
  }
  throw new Error(
    `unknown model '${id}' (expected hashgram-<dim> or http(s)://host of a /embed service)`,
  );
}
