#!/usr/bin/env python3
"""Best-effort converter from a tabular dataset export to the canonical
claim-record JSONL format.

The published corpus ships in its own tabular layout (typically one row
per actor-unstacked claim). This adapter re-stacks rows that share a
claim id into one record per annotated span and emits the interchange
format the loader expects. Column names, the delimiter and the
multi-value separator are configurable because release layouts vary;
check a few lines of your export and adjust the flags. This script is a
convenience, not part of the engine: fix-ups for exotic layouts belong
here, not in the loader.

Example:
    python3 scripts/convert_release.py claims.csv out/records.jsonl \
        --id-col cid --doc-col doc_id --date-col cdate --text-col quote \
        --category-col ccode --actor-col actor --polarity-col cpos
"""

import argparse
import csv
import json
import sys
from collections import OrderedDict


def parse_args():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("source", help="tabular export (CSV/TSV)")
    parser.add_argument("target", help="output records.jsonl")
    parser.add_argument("--delimiter", default=",")
    parser.add_argument("--multi-sep", default=";",
                        help="separator inside multi-value cells")
    parser.add_argument("--id-col", default="id")
    parser.add_argument("--doc-col", default="doc_id")
    parser.add_argument("--date-col", default="date")
    parser.add_argument("--text-col", default="text")
    parser.add_argument("--category-col", default="category")
    parser.add_argument("--actor-col", default="actor")
    parser.add_argument("--canonical-col", default=None,
                        help="column with the mapped canonical name")
    parser.add_argument("--kind-col", default=None)
    parser.add_argument("--party-col", default=None)
    parser.add_argument("--polarity-col", default="polarity")
    parser.add_argument("--positive-values", default="+,1,yes,true,pos,support")
    return parser.parse_args()


def main():
    args = parse_args()
    positive = {v.strip().lower() for v in args.positive_values.split(",")}
    records = OrderedDict()
    with open(args.source, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh, delimiter=args.delimiter)
        for i, row in enumerate(reader, start=2):
            try:
                rid = row[args.id_col].strip()
                raw_pol = row[args.polarity_col].strip().lower()
            except KeyError as exc:
                sys.exit(f"{args.source}:{i}: missing column {exc.args[0]!r}")
            polarity = "+" if raw_pol in positive else "-"
            # diverging polarity on one claim id must stay two records
            key = (rid, polarity)
            entry = records.setdefault(key, {
                "record_id": rid if polarity == "+" else f"{rid}-neg",
                "doc_id": row.get(args.doc_col, "").strip(),
                "date": row.get(args.date_col, "").strip(),
                "span_text": row.get(args.text_col, "").strip(),
                "categories": [],
                "polarity": polarity,
                "actors": [],
            })
            for code in row.get(args.category_col, "").split(args.multi_sep):
                code = code.strip()
                if code and int(code) not in entry["categories"]:
                    entry["categories"].append(int(code))
            surface = row.get(args.actor_col, "").strip()
            if surface and surface not in [a["surface"]
                                           for a in entry["actors"]]:
                actor = {"surface": surface}
                if args.canonical_col and row.get(args.canonical_col, "").strip():
                    actor["canonical"] = row[args.canonical_col].strip()
                if args.kind_col and row.get(args.kind_col, "").strip():
                    actor["kind"] = row[args.kind_col].strip()
                if args.party_col and row.get(args.party_col, "").strip():
                    actor["party"] = row[args.party_col].strip()
                entry["actors"].append(actor)

    with open(args.target, "w", encoding="utf-8") as fh:
        for entry in records.values():
            fh.write(json.dumps(entry, ensure_ascii=False) + "\n")
    print(f"wrote {len(records)} records to {args.target}")


if __name__ == "__main__":
    main()
