"""
Management command to write the motif weight w_M(e) of every edge.

Example:
  python manage.py weights g.txt --motif triangle --method fast --out weights.txt
"""
from django.core.management.base import BaseCommand

from sparsifier.cli import library_errors, read_graph, write_text
from sparsifier.motifs import parse_motif
from sparsifier.weights import motif_weights_fast, motif_weights_naive


class Command(BaseCommand):
    help = "Compute per-edge motif weights (sigma-graph method or enumeration) as 'u v w_M' lines."

    def add_arguments(self, parser):
        parser.add_argument("graph", type=str, help="Edge-list file.")
        parser.add_argument("--motif", type=str, default="triangle", help="Motif spec (default triangle).")
        parser.add_argument("--method", choices=("fast", "naive"), default="fast")
        parser.add_argument("--out", type=str, default=None, help="Output file (default stdout).")

    def handle(self, *args, **options):
        with library_errors():
            g = read_graph(options["graph"])
            motif = parse_motif(options["motif"], default_kind=g.kind)
            compute = motif_weights_fast if options["method"] == "fast" else motif_weights_naive
            weights = compute(g, motif)
        lines = [f"{u} {v} {float(weights[(u, v)])!r}" for u, v in g.edge_keys]
        write_text(options["out"], "\n".join(lines) + ("\n" if lines else ""), self.stdout)
