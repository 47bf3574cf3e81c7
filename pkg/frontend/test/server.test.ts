import { spawn, ChildProcessWithoutNullStreams } from "node:child_process";
import * as path from "node:path";
import * as readline from "node:readline";
import { fileURLToPath } from "node:url";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

const here = path.dirname(fileURLToPath(import.meta.url));
const serverPath = path.join(here, "..", "dist", "server.js");

class Connection {
  private child: ChildProcessWithoutNullStreams;
  private replies: Promise<Record<string, unknown>>[] = [];
  private resolvers: ((reply: Record<string, unknown>) => void)[] = [];

  constructor(args: string[] = []) {
    this.child = spawn(process.execPath, [serverPath, ...args]);
    const rl = readline.createInterface({ input: this.child.stdout });
    rl.on("line", (line) => {
      const resolve = this.resolvers.shift();
      if (resolve) {
        resolve(JSON.parse(line));
      }
    });
  }

  request(obj: Record<string, unknown>): Promise<Record<string, unknown>> {
    const promise = new Promise<Record<string, unknown>>((resolve) => {
      this.resolvers.push(resolve);
    });
    this.child.stdin.write(JSON.stringify(obj) + "\n");
    return promise;
  }

  close(): Promise<number | null> {
    return new Promise((resolve) => {
      this.child.on("exit", (code) => resolve(code));
      this.child.stdin.end();
    });
  }
}

describe("server process", () => {
  let conn: Connection;

  beforeAll(async () => {
    conn = new Connection();
    const hello = await conn.request({ op: "hello", version: 1 });
    expect(hello).toEqual({ ok: true, version: 1 });
  }, 60_000);

  afterAll(async () => {
    await conn.close();
  });

  it("answers 100 sim requests with in-order ids and reflexive scores", async () => {
    for (let i = 1; i <= 100; i += 1) {
      const reply = await conn.request({
        op: "sim", id: i, a: `sentence number ${i}`, b: `sentence number ${i}`,
      });
      expect(reply.id).toBe(i);
      expect(Math.abs((reply.score as number) - 1)).toBeLessThan(1e-6);
    }
  }, 60_000);

  it("is symmetric across the wire", async () => {
    const a = "factory farming causes food";
    const b = "farming produces food";
    const fwd = await conn.request({ op: "sim", id: 900, a, b });
    const rev = await conn.request({ op: "sim", id: 901, a: b, b: a });
    expect(Math.abs((fwd.score as number) - (rev.score as number))).toBeLessThan(1e-6);
    expect(fwd.score as number).toBeGreaterThan(0.5);
    expect(fwd.score as number).toBeLessThan(1);
  });

  it("answers garbage with an error object rather than silence", async () => {
    const resolverHook = conn.request({ op: "???", id: 902 });
    expect(await resolverHook).toMatchObject({ id: 902 });
  });

  it("exits cleanly at end of input", async () => {
    const short = new Connection();
    await short.request({ op: "hello", version: 1 });
    expect(await short.close()).toBe(0);
  });
});

describe("model flag", () => {
  it("fails fast on an unknown model", async () => {
    const child = spawn(process.execPath, [serverPath, "--model", "nonexistent"]);
    const code = await new Promise<number | null>((resolve) => {
      child.on("exit", resolve);
    });
    expect(code).not.toBe(0);
  });

  it("accepts an explicit dimension", async () => {
    const conn = new Connection(["--model", "hash-tf-64"]);
    const reply = await conn.request({ op: "sim", id: 1, a: "x", b: "x" });
    expect(reply).toEqual({ id: 1, score: 1 });
    await conn.close();
  });
});
