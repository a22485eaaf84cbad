"""
Management command to generate a graph in the edge-list format.

Examples:
  python manage.py gen clique 4
  python manage.py gen gnp 16 --p 0.5 --seed 7 --out g16.txt
  python manage.py gen delta-minus 10 --out dm10.txt
  python manage.py gen clique-minus-edge 10 --out g.txt --hat-out g_hat.txt
"""
from django.core.management.base import BaseCommand, CommandError

from sparsifier.cli import EXIT_USAGE, library_errors, write_text
from sparsifier.generators import complete_graph, gnp_graph
from sparsifier.graph import DIRECTED, UNDIRECTED, format_graph, save_graph
from sparsifier.lab import build_delta_minus, clique_minus_edge_example


KINDS = ("clique", "gnp", "delta-minus", "clique-minus-edge")


class Command(BaseCommand):
    help = "Generate a clique, G(n, p), delta-minus or clique-minus-edge graph as an edge list."

    def add_arguments(self, parser):
        parser.add_argument("kind", choices=KINDS)
        parser.add_argument("n", type=int, help="Vertex count.")
        parser.add_argument("--p", type=float, default=0.5, help="Edge probability for gnp (default 0.5).")
        parser.add_argument("--seed", type=int, default=0, help="RNG seed for gnp (default 0).")
        parser.add_argument("--directed", action="store_true", help="Directed clique or gnp.")
        parser.add_argument(
            "--weights",
            type=float,
            nargs=2,
            metavar=("LOW", "HIGH"),
            default=None,
            help="Uniform random gnp weights in [LOW, HIGH] instead of unit weights.",
        )
        parser.add_argument(
            "--exponent",
            type=float,
            default=2.0,
            help="clique-minus-edge: heavy edge n^e, light edges n^-e (default 2).",
        )
        parser.add_argument("--out", type=str, default=None, help="Output file (default stdout).")
        parser.add_argument("--hat-out", type=str, default=None, help="clique-minus-edge: file for the sparse pair graph.")

    def handle(self, *args, **options):
        kind = options["kind"]
        n = options["n"]
        graph_kind = DIRECTED if options["directed"] else UNDIRECTED
        if options["directed"] and kind not in ("clique", "gnp"):
            raise CommandError(f"{kind} graphs are undirected", returncode=EXIT_USAGE)

        with library_errors():
            if kind == "clique":
                g = complete_graph(n, graph_kind)
            elif kind == "gnp":
                weights = tuple(options["weights"]) if options["weights"] else None
                g = gnp_graph(n, options["p"], seed=options["seed"], directed=options["directed"], weight_range=weights)
            elif kind == "delta-minus":
                g = build_delta_minus(n)
            else:
                g, g_hat = clique_minus_edge_example(n, exponent=options["exponent"])
                if options["hat_out"]:
                    save_graph(g_hat, options["hat_out"])

        write_text(options["out"], format_graph(g), self.stdout)
        if options["out"]:
            self.stdout.write(self.style.SUCCESS(f"Wrote {kind} graph (n={g.n}, m={g.m}) to {options['out']}"))
