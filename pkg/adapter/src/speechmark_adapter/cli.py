"""Adapter command line: transcribe, strip, manifest."""

import argparse
import json
import sys

from .errors import AdapterError
from .manifest import default_manifest
from .segments import strip_interviewer
from .transcribe import transcribe_to_file


def build_parser():
    parser = argparse.ArgumentParser(
        prog="adapter",
        description="Produce speechmark recording JSON from raw audio.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transcribe", help="audio -> recording JSON (schema v1)")
    p.add_argument("--audio", required=True, help="mono 16 kHz 16-bit WAV")
    p.add_argument("--out", required=True, help="output JSON path")
    p.add_argument("--engine", default="offline", choices=("offline", "transformers"))
    p.add_argument("--script", default=None,
                   help="transcript text file for the offline engine")
    p.add_argument("--recording-id", default=None)
    p.add_argument("--subject-id", default=None)

    p = sub.add_parser("strip", help="remove interviewer speech, concatenate the rest")
    p.add_argument("--audio", required=True)
    p.add_argument("--segments", required=True, help="speaker-labeled spans JSON")
    p.add_argument("--out", required=True, help="output WAV path")

    p = sub.add_parser("manifest", help="print the model-role manifest")
    p.add_argument("--engine", default="offline", choices=("offline", "transformers"))
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "transcribe":
            transcribe_to_file(
                args.audio, args.out, engine=args.engine, script_path=args.script,
                recording_id=args.recording_id, subject_id=args.subject_id,
            )
        elif args.command == "strip":
            strip_interviewer(args.audio, args.segments, args.out)
        elif args.command == "manifest":
            print(json.dumps(default_manifest(args.engine).to_dict(), indent=1))
        return 0
    except AdapterError as exc:
        print(f"adapter: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
