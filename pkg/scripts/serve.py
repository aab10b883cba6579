#!/usr/bin/env python3
"""Run the session service.

    python scripts/serve.py [--port 8000] [--store-dir DIR]

The playground frontend under frontend/ talks to this server.
"""

import argparse

import uvicorn

from numbersgame.service import create_app


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--store-dir", default=None)
    parser.add_argument("--step-cap", type=int, default=10_000)
    args = parser.parse_args()
    app = create_app(store_dir=args.store_dir, step_cap=args.step_cap)
    uvicorn.run(app, host=args.host, port=args.port)


if __name__ == "__main__":
    main()
