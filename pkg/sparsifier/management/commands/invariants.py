"""
Management command to run the brute-force invariant suite on a small graph.

Example:
  python manage.py invariants k5.txt --motif triangle --out invariants.json
"""
from django.core.management.base import BaseCommand, CommandError

from sparsifier.cli import EXIT_FAILED, dump_json, library_errors, read_graph, write_text
from sparsifier.motifs import parse_motif
from sparsifier.verify import check_invariants


class Command(BaseCommand):
    help = "Check strengths, weights, connectivities and importance bounds against brute-force oracles."

    def add_arguments(self, parser):
        parser.add_argument("graph", type=str, help="Edge-list file (at most SPARSIFY_INVARIANT_LIMIT vertices).")
        parser.add_argument("--motif", type=str, default="triangle", help="Motif spec (default triangle).")
        parser.add_argument("--out", type=str, default=None, help="Report file (default stdout).")

    def handle(self, *args, **options):
        with library_errors():
            g = read_graph(options["graph"])
            motif = parse_motif(options["motif"], default_kind=g.kind)
            report = check_invariants(g, motif)

        write_text(options["out"], dump_json(report.to_dict()), self.stdout)
        failures = report.failures()
        if failures:
            raise CommandError(
                "invariants failed: " + ", ".join(item.name for item in failures),
                returncode=EXIT_FAILED,
            )
        if options["out"]:
            self.stdout.write(self.style.SUCCESS(f"All {len(report.invariants)} invariants hold"))
