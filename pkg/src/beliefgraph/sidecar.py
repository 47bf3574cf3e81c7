"""Client side of the newline-delimited JSON scorer protocol.

One sidecar child process can back all three scorer roles: edge similarity
("sim"), stance probability ("stance") and belief-graph classification
("classify").  Requests on a connection are strictly serialized and matched
to responses by id.
"""

from __future__ import annotations

import json
import queue
import shlex
import subprocess
import threading

from .errors import SidecarProtocolError, SidecarTimeoutError

PROTOCOL_VERSION = 1
DEFAULT_TIMEOUT = 30.0


class SidecarClient:
    """Launches a sidecar command and speaks the ndjson protocol over its stdio."""

    def __init__(self, command: str | list[str], timeout: float = DEFAULT_TIMEOUT):
        self.command = shlex.split(command) if isinstance(command, str) else list(command)
        self.timeout = timeout
        self._proc: subprocess.Popen | None = None
        self._lines: queue.Queue = queue.Queue()
        self._next_id = 0
        self._lock = threading.Lock()

    def start(self) -> None:
        self._proc = subprocess.Popen(
            self.command, stdin=subprocess.PIPE, stdout=subprocess.PIPE, text=True)
        reader = threading.Thread(target=self._drain, daemon=True)
        reader.start()
        reply = self._roundtrip({"op": "hello", "version": PROTOCOL_VERSION})
        if reply.get("ok") is not True or reply.get("version") != PROTOCOL_VERSION:
            self.close()
            raise SidecarProtocolError(f"handshake rejected: {reply!r}")

    def _drain(self) -> None:
        assert self._proc is not None and self._proc.stdout is not None
        for line in self._proc.stdout:
            self._lines.put(line)
        self._lines.put(None)  # child closed its stdout

    def _roundtrip(self, obj: dict) -> dict:
        if self._proc is None or self._proc.poll() is not None:
            raise SidecarProtocolError("sidecar process is not running")
        assert self._proc.stdin is not None
        self._proc.stdin.write(json.dumps(obj) + "\n")
        self._proc.stdin.flush()
        try:
            line = self._lines.get(timeout=self.timeout)
        except queue.Empty:
            raise SidecarTimeoutError(f"no response within {self.timeout}s") from None
        if line is None:
            raise SidecarProtocolError("sidecar exited before responding")
        try:
            reply = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SidecarProtocolError(f"malformed response line: {line!r}") from exc
        if not isinstance(reply, dict):
            raise SidecarProtocolError(f"expected a JSON object, got: {reply!r}")
        if "error" in reply:
            raise SidecarProtocolError(f"sidecar error: {reply['error']}")
        return reply

    def _request(self, obj: dict) -> dict:
        with self._lock:  # one in-flight request per connection
            self._next_id += 1
            obj = {**obj, "id": self._next_id}
            reply = self._roundtrip(obj)
            if reply.get("id") != self._next_id:
                raise SidecarProtocolError(
                    f"response id {reply.get('id')!r} does not match request id {self._next_id}")
            return reply

    def sim(self, a: str, b: str) -> float:
        reply = self._request({"op": "sim", "a": a, "b": b})
        return _clamp_score(reply)

    def stance(self, belief: str, argument: str, graph: str, stance: str) -> float:
        reply = self._request({"op": "stance", "belief": belief, "argument": argument,
                               "graph": graph, "stance": stance})
        return _clamp_score(reply)

    def classify(self, belief: str, graph: str) -> str:
        reply = self._request({"op": "classify", "belief": belief, "graph": graph})
        label = reply.get("label")
        if not isinstance(label, str):
            raise SidecarProtocolError(f"missing label in response: {reply!r}")
        return label

    def close(self) -> None:
        if self._proc is None:
            return
        try:
            if self._proc.stdin is not None:
                self._proc.stdin.close()
            self._proc.wait(timeout=5)
        except Exception:
            self._proc.kill()
        self._proc = None

    def restart(self) -> None:
        self.close()
        self._lines = queue.Queue()
        self.start()

    def __enter__(self) -> "SidecarClient":
        self.start()
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def _clamp_score(reply: dict) -> float:
    score = reply.get("score")
    if not isinstance(score, (int, float)):
        raise SidecarProtocolError(f"missing score in response: {reply!r}")
    return min(1.0, max(0.0, float(score)))


class SidecarSimilarityScorer:
    """EdgeSimilarityScorer backed by a sidecar connection."""

    reentrant = False

    def __init__(self, client: SidecarClient):
        self.client = client

    def score(self, sentence_a: str, sentence_b: str) -> float:
        return self.client.sim(sentence_a, sentence_b)


class SidecarStanceScorer:
    reentrant = False

    def __init__(self, client: SidecarClient):
        self.client = client

    def probability(self, belief: str, argument: str, graph_text: str,
                    target_stance: str) -> float:
        return self.client.stance(belief, argument, graph_text, target_stance)


class SidecarGraphClassifier:
    reentrant = False

    def __init__(self, client: SidecarClient):
        self.client = client

    def classify(self, belief: str, graph_text: str) -> str:
        return self.client.classify(belief, graph_text)
