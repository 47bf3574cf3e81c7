/**
 * Request handling for the newline-delimited JSON scorer protocol.
 *
 * Ops: "hello" (handshake), "sim" (sentence similarity), "stance"
 * (stance-probability stub) and "classify" (belief-graph label stub). Every
 * well-formed request gets exactly one response; malformed or unknown input
 * gets an error object, never silence.
 */

import { Embedder, similarity, tokenize } from "./embed.js";

export const PROTOCOL_VERSION = 1;

export type Reply = Record<string, unknown>;

function errorReply(message: string, id: unknown = null): Reply {
  return { error: message, id: id ?? null };
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function requireString(req: Record<string, unknown>, key: string): string {
  const value = req[key];
  if (typeof value !== "string") {
    throw new Error(`field ${JSON.stringify(key)} must be a string`);
  }
  return value;
}

/** Stance stub: similarity between the graph text and the paired inputs. */
function stanceProbability(embedder: Embedder, belief: string, argument: string,
                           graph: string): number {
  const cleaned = graph.replace(/[();]/g, " ");
  return similarity(embedder, `${belief} ${argument}`, cleaned);
}

/** Classifier stub: parity of negated relations, mirroring the primary's default. */
function classifyGraph(graph: string): string {
  if (!graph.includes("(") || !graph.includes(";")) {
    return "incorrect";
  }
  const negated = (graph.match(/;\s*not\s/g) ?? []).length;
  return negated % 2 === 1 ? "counter" : "support";
}

export function handleLine(embedder: Embedder, line: string): Reply | null {
  const trimmed = line.trim();
  if (trimmed.length === 0) {
    return null;
  }
  let req: unknown;
  try {
    req = JSON.parse(trimmed);
  } catch {
    return errorReply("malformed JSON line");
  }
  if (!isRecord(req)) {
    return errorReply("request must be a JSON object");
  }
  const id = "id" in req ? req.id : null;
  try {
    switch (req.op) {
      case "hello": {
        if (req.version !== PROTOCOL_VERSION) {
          return errorReply(`unsupported protocol version ${JSON.stringify(req.version)}`, id);
        }
        return { ok: true, version: PROTOCOL_VERSION };
      }
      case "sim": {
        const a = requireString(req, "a");
        const b = requireString(req, "b");
        return { id, score: similarity(embedder, a, b) };
      }
      case "stance": {
        const belief = requireString(req, "belief");
        const argument = requireString(req, "argument");
        const graph = requireString(req, "graph");
        requireString(req, "stance");
        return { id, score: stanceProbability(embedder, belief, argument, graph) };
      }
      case "classify": {
        requireString(req, "belief");
        const graph = requireString(req, "graph");
        return { id, label: classifyGraph(graph) };
      }
      default:
        return errorReply(`unknown op ${JSON.stringify(req.op)}`, id);
    }
  } catch (err) {
    return errorReply(err instanceof Error ? err.message : String(err), id);
  }
}

export { tokenize };
