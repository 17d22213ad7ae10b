"""External-process adapter: pluggable selectors and readers over pipes.

The child process speaks line-delimited JSON on stdin/stdout. Selector
role: a "score" request with the question and all sentences (token
texts, canonical document order) must be answered by a "scores"
response of equal length. Reader role: a "read" request with the
concatenated context must be answered by an "answer" response.

Each worker thread gets its own child process; requests to one process
are strictly request/response.
"""

from __future__ import annotations

import json
import queue
import shlex
import subprocess
import threading
from typing import Sequence

from .corpus import RetrievalBundle
from .errors import AdapterCrash, AdapterProtocolError, AdapterTimeout
from .selection import Selector

DEFAULT_TIMEOUT = 60.0


class AdapterClient:
    """One child process plus a reader thread for timeout-capable reads."""

    def __init__(self, command: str | Sequence[str], timeout: float = DEFAULT_TIMEOUT):
        argv = shlex.split(command) if isinstance(command, str) else list(command)
        self.timeout = timeout
        try:
            self._proc = subprocess.Popen(
                argv,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.DEVNULL,
                text=True,
                encoding="utf-8",
            )
        except OSError as exc:
            raise AdapterCrash(f"could not start adapter {argv!r}: {exc}") from exc
        self._lines: queue.Queue[str | None] = queue.Queue()
        self._reader = threading.Thread(target=self._pump, daemon=True)
        self._reader.start()

    def _pump(self) -> None:
        try:
            for line in self._proc.stdout:
                self._lines.put(line)
        finally:
            self._lines.put(None)

    def request(self, payload: dict) -> dict:
        """Send one JSON line, wait for one JSON line back."""
        try:
            self._proc.stdin.write(json.dumps(payload) + "\n")
            self._proc.stdin.flush()
        except (OSError, ValueError) as exc:
            raise AdapterCrash(f"adapter pipe closed: {exc}") from exc
        try:
            line = self._lines.get(timeout=self.timeout)
        except queue.Empty:
            raise AdapterTimeout(
                f"adapter did not respond within {self.timeout} s"
            ) from None
        if line is None:
            raise AdapterCrash(f"adapter exited with code {self._proc.poll()}")
        try:
            response = json.loads(line)
        except json.JSONDecodeError as exc:
            raise AdapterProtocolError(f"adapter sent invalid JSON: {exc.msg}") from None
        if not isinstance(response, dict):
            raise AdapterProtocolError("adapter response must be a JSON object")
        return response

    def close(self) -> None:
        if self._proc.poll() is None:
            try:
                self._proc.stdin.close()
            except OSError:
                pass
            try:
                self._proc.wait(timeout=0.5)
            except subprocess.TimeoutExpired:
                self._proc.kill()
                self._proc.wait()

    def __enter__(self) -> "AdapterClient":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def adapter_call(command: str | Sequence[str], payload: dict, timeout: float = DEFAULT_TIMEOUT) -> dict:
    """One-shot request against a fresh child process."""
    with AdapterClient(command, timeout=timeout) as client:
        return client.request(payload)


class _PerThreadClients:
    """Lazily creates one AdapterClient per calling thread."""

    def __init__(self, command: str | Sequence[str], timeout: float):
        self._command = command
        self._timeout = timeout
        self._local = threading.local()
        self._all: list[AdapterClient] = []
        self._lock = threading.Lock()

    def get(self) -> AdapterClient:
        client = getattr(self._local, "client", None)
        if client is None:
            client = AdapterClient(self._command, timeout=self._timeout)
            self._local.client = client
            with self._lock:
                self._all.append(client)
        return client

    def close_all(self) -> None:
        with self._lock:
            clients, self._all = self._all, []
        for client in clients:
            client.close()


class ExternalSelector(Selector):
    """Selector backed by an external process speaking the score protocol."""

    name = "external"

    def __init__(self, command: str | Sequence[str], timeout: float = DEFAULT_TIMEOUT):
        self._clients = _PerThreadClients(command, timeout)

    def prepare(self, bundle: RetrievalBundle):
        order = [(doc.rank, s.sentence_index) for doc, s in bundle.sentences()]
        request = {
            "type": "score",
            "question_id": bundle.question_id,
            "question": bundle.question.texts(),
            "sentences": [s.texts() for _, s in bundle.sentences()],
        }
        response = self._clients.get().request(request)
        if response.get("type") != "scores":
            raise AdapterProtocolError(
                f"expected a 'scores' response, got {response.get('type')!r}"
            )
        if response.get("question_id") != bundle.question_id:
            raise AdapterProtocolError("scores response for the wrong question_id")
        scores = response.get("scores")
        if not isinstance(scores, list) or len(scores) != len(order):
            raise AdapterProtocolError(
                f"expected {len(order)} scores, got "
                f"{len(scores) if isinstance(scores, list) else type(scores).__name__}"
            )
        try:
            return {key: float(v) for key, v in zip(order, scores)}
        except (TypeError, ValueError):
            raise AdapterProtocolError("scores must be numbers") from None

    def score_sentence(self, bundle, doc, sentence_index, ctx) -> float:
        return ctx[(doc.rank, sentence_index)]

    def close(self) -> None:
        self._clients.close_all()


class ExternalReader:
    """Reader backed by an external process speaking the read protocol."""

    def __init__(self, command: str | Sequence[str], timeout: float = DEFAULT_TIMEOUT):
        self._clients = _PerThreadClients(command, timeout)

    def read(self, question_id: str, question: list[str], context: list[str]) -> tuple[str, float]:
        request = {
            "type": "read",
            "question_id": question_id,
            "question": question,
            "context": context,
        }
        response = self._clients.get().request(request)
        if response.get("type") != "answer":
            raise AdapterProtocolError(
                f"expected an 'answer' response, got {response.get('type')!r}"
            )
        if response.get("question_id") != question_id:
            raise AdapterProtocolError("answer response for the wrong question_id")
        answer = response.get("answer")
        if not isinstance(answer, str):
            raise AdapterProtocolError("answer must be a string")
        try:
            score = float(response.get("score", 0.0))
        except (TypeError, ValueError):
            raise AdapterProtocolError("answer score must be a number") from None
        return answer, score

    def close(self) -> None:
        self._clients.close_all()
