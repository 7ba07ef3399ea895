"""Run the import service: python -m surveygraph.service [--port N].

SURVEYGRAPH_STORE       graph store file (default workspace/graph/store.log)
SURVEYGRAPH_METADATA_RECORDS  offline metadata record file
SURVEYGRAPH_STATIC      directory with the built web UI bundle
"""

import argparse
import os

import uvicorn

from .app import create_app


def main() -> None:
    parser = argparse.ArgumentParser(description="surveygraph import service")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    args = parser.parse_args()
    app = create_app(
        store_path=os.environ.get("SURVEYGRAPH_STORE", "workspace/graph/store.log"),
        records_path=os.environ.get("SURVEYGRAPH_METADATA_RECORDS") or None,
        static_dir=os.environ.get("SURVEYGRAPH_STATIC") or None,
    )
    uvicorn.run(app, host=args.host, port=args.port)


if __name__ == "__main__":
    main()
