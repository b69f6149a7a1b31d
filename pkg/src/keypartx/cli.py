"""Command line: ``keypartx run`` builds graphs and partitions, ``keypartx inspect``
prints report rows from a saved graph."""
from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import kernels
from .corpus_io import FORMATS, load_graph
from .graph import report_text, semantic_relations_report
from .pipeline import EXIT_STAGE_ERROR, EXIT_USAGE, PipelineConfig, run_pipeline


def _formats(text: str) -> tuple:
    fmts = tuple(f.strip() for f in text.split(",") if f.strip())
    bad = [f for f in fmts if f not in FORMATS]
    if bad or not fmts:
        raise argparse.ArgumentTypeError(f"export formats must come from {FORMATS}")
    return fmts


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="keypartx", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="build, reduce and partition a perception graph")
    run.add_argument("--input", required=True, help="corpus file (CSV or CoNLL-U)")
    run.add_argument("--format", choices=("csv", "conllu"), default="csv")
    run.add_argument("--text-col", default=None,
                     help="CSV text column, by name or 0-based index (default: first non-id column)")
    run.add_argument("--nn-mode", choices=("off", "restricted", "greedy"), default="greedy")
    run.add_argument("--unit", choices=("sentence", "document"), default="document")
    run.add_argument("--no-conative", action="store_true", help="keep every verb")
    run.add_argument("--conative-list", default=None, help="file with one verb lemma per line")
    run.add_argument("--k-weight", type=_positive_int, default=2)
    run.add_argument("--k-core", type=_nonneg_int, default=2)
    run.add_argument("--gamma", type=_positive_float, default=1.0)
    run.add_argument("--seed", type=int, default=42)
    run.add_argument("--export", type=_formats, default=FORMATS,
                     help="comma-separated subset of json,graphml,dot")
    run.add_argument("--out-dir", default="out")
    run.add_argument("--workers", type=_positive_int, default=1)
    run.add_argument("--lexicon", default=None, help="word<TAB>count spelling lexicon")
    run.add_argument("--tagger-model", default=None, help="tagger JSON model")
    run.add_argument("-v", "--verbose", action="store_true")

    ins = sub.add_parser("inspect", help="print semantic-relation rows from a graph file")
    ins.add_argument("graph", help="graph_*.json or graph_*.graphml")
    grp = ins.add_mutually_exclusive_group()
    grp.add_argument("--noun", help="noun node label, e.g. room2n")
    grp.add_argument("--top", type=_positive_int, default=None, help="show the N highest-degree nouns")
    ins.add_argument("--unweighted", action="store_true",
                     help="rank by number of edges instead of summed weight")
    return ap


def near_matches(word: str, labels, limit: int = 5) -> list[str]:
    """Labels closest to ``word`` by edit distance, at most ``limit`` of them."""
    labels = sorted(labels)
    if not labels:
        return []
    width = max(map(len, labels))
    codes = np.full((len(labels), width), -1, dtype=np.int32)
    for i, w in enumerate(labels):
        codes[i, :len(w)] = [ord(c) for c in w]
    lengths = np.array([len(w) for w in labels], dtype=np.int32)
    query = np.array([ord(c) for c in word], dtype=np.int32)
    cap = max(len(word), width)
    d = kernels.osa_distances(query, codes, lengths, cap)
    ranked = sorted(zip(d.tolist(), labels))
    return [w for dist, w in ranked[:limit] if dist <= max(3, len(word) // 2)]


def cmd_run(args) -> int:
    cfg = PipelineConfig(
        input=args.input, format=args.format, text_column=args.text_col,
        lexicon=args.lexicon, tagger_model=args.tagger_model, nn_mode=args.nn_mode,
        unit=args.unit, conative=not args.no_conative, conative_list=args.conative_list,
        k_weight=args.k_weight, k_core=args.k_core, gamma=args.gamma, seed=args.seed,
        export=tuple(args.export), out_dir=args.out_dir, workers=args.workers)
    try:
        cfg.validate()
    except (ValueError, FileNotFoundError) as e:
        print(f"keypartx: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    res = run_pipeline(cfg)
    st = res.manifest["stages"]
    if "full" in st:
        f, r = st["full"], st["reduced"]
        print(f"documents {st['documents']}, match pairs {st['match_pairs']} "
              f"({st['match_pairs_kept']} kept)")
        print(f"full graph: {f['nodes']} nodes ({f['adj']} adj, {f['verb']} verb, "
              f"{f['noun']} noun), {f['edges']} edges ({f['directed']} AV2N, "
              f"{f['undirected']} NN)")
        print(f"reduced graph: {r['nodes']} nodes, {r['edges']} edges")
        if st.get("communities"):
            c = st["communities"]
            print(f"communities: {c['count']} ({c['noun_only']} noun-only), "
                  f"Q={c['Q_raw']:.4f} (normalized {c['Q_normalized']:.4f})")
    stream = sys.stdout if res.status == 0 else sys.stderr
    if res.status != 0:
        print(f"keypartx: {res.message}", file=stream)
    return res.status


def cmd_inspect(args) -> int:
    try:
        g = load_graph(args.graph)
    except FileNotFoundError:
        print(f"keypartx: error: graph file not found: {args.graph}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError) as e:
        print(f"keypartx: error: cannot parse {args.graph}: {e}", file=sys.stderr)
        return EXIT_STAGE_ERROR
    rows = semantic_relations_report(g, weighted=not args.unweighted)
    if args.noun:
        hit = [r for r in rows if r.noun == args.noun]
        if not hit:
            nouns = [n for n, k in g.nodes.items() if k == "noun"]
            sugg = near_matches(args.noun, nouns)
            msg = f"keypartx: unknown noun {args.noun!r}"
            if sugg:
                msg += "; did you mean: " + ", ".join(sugg)
            print(msg, file=sys.stderr)
            return EXIT_STAGE_ERROR
        rows = hit
    elif args.top:
        rows = rows[:args.top]
    sys.stdout.write(report_text(rows))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "run":
        return cmd_run(args)
    return cmd_inspect(args)


if __name__ == "__main__":
    sys.exit(main())
