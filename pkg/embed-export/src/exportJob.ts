import { readFile, writeFile } from "node:fs/promises";

import { parseDataset, parseDictionary } from "./data.js";
import { EmbeddingRecord, toJsonl, validateRecords } from "./jsonl.js";
import { resolveModel } from "./models.js";
import { buildQueryText } from "./queryText.js";

export interface ExportJob {
  dictionaryPath: string;
  datasetPath: string;
  model: string;
  outPath: string;
  batchSize: number;
}

export interface ExportSummary {
  keywords: number;
  queries: number;
  dim: number;
}

async function embedBatched(
  embedder: { embed(texts: readonly string[]): Promise<number[][]> },
  texts: readonly string[],
  batchSize: number,
): Promise<number[][]> {
  const out: number[][] = [];
  for (let start = 0; start < texts.length; start += batchSize) {
    const batch = texts.slice(start, start + batchSize);
    out.push(...(await embedder.embed(batch)));
  }
  return out;
}

/**
 * Embed every dictionary keyword (raw text, no instruction) and every
 * utterance query (the instruction-prefixed hypothesis list, keyed by
 * utterance id), validate, and write the engine's embedding JSONL.
 */
export async function runExport(job: ExportJob): Promise<ExportSummary> {
  if (job.batchSize < 1) {
    throw new Error(`batch size must be >= 1, got ${job.batchSize}`);
  }
  const keywords = parseDictionary(await readFile(job.dictionaryPath, "utf-8"));
  const utterances = parseDataset(await readFile(job.datasetPath, "utf-8"));
  const embedder = resolveModel(job.model);

  const texts = [...keywords, ...utterances.map((u) => buildQueryText(u.hypotheses))];
  const vectors = await embedBatched(embedder, texts, job.batchSize);

  const records: EmbeddingRecord[] = [];
  keywords.forEach((keyword, i) => {
    records.push({ kind: "keyword", key: keyword, embedding: vectors[i] });
  });
  utterances.forEach((utterance, i) => {
    records.push({
      kind: "query",
      key: utterance.id,
      embedding: vectors[keywords.length + i],
    });
  });

  const dim = validateRecords(records);
  await writeFile(job.outPath, toJsonl(records), "utf-8");
  return { keywords: keywords.length, queries: utterances.length, dim };
}
