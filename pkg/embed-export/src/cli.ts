#!/usr/bin/env node
/**
 * embed-export --dict <file> --dataset <file> --out <file>
 *              [--model hashgram-64 | http://host:port] [--batch-size 64]
 *
 * Writes the retrieval engine's embedding JSONL: one keyword record per
 * dictionary entry and one query record per utterance.
 */

import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import { runExport } from "./exportJob.js";

const USAGE =
  "usage: embed-export --dict FILE --dataset FILE --out FILE " +
  "[--model ID] [--batch-size N]";

export async function main(argv: string[]): Promise<number> {
  let values;
  try {
    ({ values } = parseArgs({
      args: argv,
      options: {
        dict: { type: "string" },
        dataset: { type: "string" },
        out: { type: "string" },
        model: { type: "string", default: "hashgram-64" },
        "batch-size": { type: "string", default: "64" },
        help: { type: "boolean", default: false },
      },
      strict: true,
    }));
  } catch (error) {
    console.error(`error: ${(error as Error).message}`);
    console.error(USAGE);
    return 1;
  }
  if (values.help) {
    console.log(USAGE);
    return 0;
  }
  if (!values.dict || !values.dataset || !values.out) {
    console.error("error: --dict, --dataset and --out are required");
    console.error(USAGE);
    return 1;
  }
  const batchSize = Number(values["batch-size"]);
  if (!Number.isInteger(batchSize) || batchSize < 1) {
    console.error(`error: --batch-size must be a positive integer`);
    return 1;
  }
  try {
    const summary = await runExport({
      dictionaryPath: values.dict,
      datasetPath: values.dataset,
      model: values.model!,
      outPath: values.out,
      batchSize,
    });
    console.log(
      `wrote ${summary.keywords} keyword + ${summary.queries} query ` +
        `embeddings (dim ${summary.dim}) to ${values.out}`,
    );
    return 0;
  } catch (error) {
    console.error(`error: ${(error as Error).message}`);
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;

if (invokedDirectly) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
