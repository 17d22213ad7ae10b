#!/usr/bin/env python3
"""Misbehaving stub for adapter error handling tests.

Modes:
  badjson       respond with a non-JSON line
  wrongtype     respond with an unexpected type field
  shortscores   respond with too few scores
  badid         respond for a different question_id
  sleep S       wait S seconds before each response
  crash         exit immediately with a nonzero code
"""
import json
import sys
import time

mode = sys.argv[1]

if mode == "crash":
    sys.exit(3)

for line in sys.stdin:
    request = json.loads(line)
    if mode == "badjson":
        print("{this is not json", flush=True)
    elif mode == "wrongtype":
        print(json.dumps({"type": "nonsense", "question_id": request["question_id"]}), flush=True)
    elif mode == "shortscores":
        print(
            json.dumps(
                {"type": "scores", "question_id": request["question_id"], "scores": [1.0]}
            ),
            flush=True,
        )
    elif mode == "badid":
        print(json.dumps({"type": "scores", "question_id": "someone-else", "scores": []}), flush=True)
    elif mode == "sleep":
        time.sleep(float(sys.argv[2]))
        n = len(request.get("sentences", []))
        print(
            json.dumps(
                {"type": "scores", "question_id": request["question_id"], "scores": [0.0] * n}
            ),
            flush=True,
        )
