#!/usr/bin/env node
/**
 * Sidecar entry point: read newline-delimited JSON requests from stdin and
 * write one response line per request to stdout, until end-of-input.
 *
 * Usage: embed-sidecar [--model hash-tf-256]
 */

import * as readline from "node:readline";

import { createEmbedder, Embedder } from "./embed.js";
import { handleLine } from "./protocol.js";

function parseArgs(argv: string[]): { model: string } {
  let model = "hash-tf-256";
  for (let i = 0; i < argv.length; i += 1) {
    if (argv[i] === "--model") {
      const value = argv[i + 1];
      if (value === undefined) {
        throw new Error("--model requires a value");
      }
      model = value;
      i += 1;
    } else {
      throw new Error(`unknown argument ${JSON.stringify(argv[i])}`);
    }
  }
  return { model };
}

export function serve(embedder: Embedder): Promise<void> {
  return new Promise((resolve) => {
    const rl = readline.createInterface({ input: process.stdin, terminal: false });
    rl.on("line", (line) => {
      const reply = handleLine(embedder, line);
      if (reply !== null) {
        process.stdout.write(JSON.stringify(reply) + "\n");
      }
    });
    rl.on("close", resolve);
  });
}

async function main(): Promise<void> {
  let embedder: Embedder;
  try {
    // model-load failures must exit non-zero before any handshake happens
    embedder = createEmbedder(parseArgs(process.argv.slice(2)).model);
  } catch (err) {
    console.error(`embed-sidecar: ${err instanceof Error ? err.message : err}`);
    process.exit(1);
  }
  await serve(embedder);
}

main();
