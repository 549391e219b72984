/**
 * Instruction-prefixed query text for one utterance.
 *
 * Must stay byte-identical to the engine's query construction: the
 * engine looks query embeddings up by utterance id and assumes the
 * stored vector embeds exactly this string.
 */

const QUERY_INSTRUCTION =
  "Given a list of candidate transcriptions predicted by a speech recognition " +
  "model as a query, retrieve keywords relevant to the query. " +
  "The candidate transcriptions are: ";

export function buildQueryText(hypotheses: readonly string[]): string {
  if (hypotheses.length === 0) {
    throw new Error("an utterance needs at least one hypothesis");
  }
  return QUERY_INSTRUCTION + hypotheses.join(", ") + ".";
}
