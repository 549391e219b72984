/** Input parsing: keyword dictionaries and utterance datasets. */

export interface Utterance {
  id: string;
  hypotheses: string[];
}

export function parseDictionary(content: string): string[] {
  const keywords = content
    .split("\n")
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
  const unique = new Set(keywords);
  if (unique.size !== keywords.length) {
    const seen = new Set<string>();
    const dup = keywords.find((k) => seen.has(k) || (seen.add(k), false));
    throw new Error(`duplicate dictionary keyword ${JSON.stringify(dup)}`);
  }
  if (keywords.length === 0) {
    throw new Error("dictionary is empty");
  }
  return keywords;
}

export function parseDataset(content: string): Utterance[] {
  const utterances: Utterance[] = [];
  const seen = new Set<string>();
  content.split("\n").forEach((line, index) => {
    if (!line.trim()) {
      return;
    }
    let obj: unknown;
    try {
      obj = JSON.parse(line);
    } catch (error) {
      throw new Error(`dataset line ${index + 1}: invalid JSON`);
    }
    const record = obj as { id?: unknown; hypotheses?: unknown };
    if (typeof record.id !== "string" && typeof record.id !== "number") {
      throw new Error(`dataset line ${index + 1}: missing 'id'`);
    }
    const id = String(record.id);
    if (
      !Array.isArray(record.hypotheses) ||
      record.hypotheses.length === 0 ||
      !record.hypotheses.every((h) => typeof h === "string")
    ) {
      throw new Error(
        `dataset line ${index + 1}: 'hypotheses' must be a non-empty string array`,
      );
    }
    if (seen.has(id)) {
      throw new Error(`dataset line ${index + 1}: duplicate utterance id ${id}`);
    }
    seen.add(id);
    utterances.push({ id, hypotheses: record.hypotheses });
  });
  if (utterances.length === 0) {
    throw new Error("dataset is empty");
  }
  return utterances;
}
