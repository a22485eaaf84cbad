"""
Management command to measure the motif cut error of a sparsifier.

Examples:
  python manage.py verify g.txt g_hat.txt --motifs triangle --epsilon 0.5
  python manage.py verify g.txt g_hat.txt --motifs path2 --induced --mode exhaustive
  python manage.py verify big.txt big_hat.txt --mode sampled --samples 5000 --seed 3 --out report.json

Exit status: 0 when the error is within epsilon, 1 when it is not, 3 when an
exhaustive scan is requested on more vertices than SPARSIFY_VERIFY_LIMIT.
"""
import numpy as np
from django.core.management.base import BaseCommand, CommandError

from sparsifier.cli import EXIT_FAILED, dump_json, library_errors, read_graph, read_motifs, write_text
from sparsifier.conf import number_setting
from sparsifier.verify import max_cut_error, merge_reports, sampled_cut_error


MODES = ("auto", "exhaustive", "sampled")


class Command(BaseCommand):
    help = "Report the max relative motif cut error of a sparsifier against the original graph as JSON."

    def add_arguments(self, parser):
        parser.add_argument("graph", type=str, help="Original edge-list file.")
        parser.add_argument("sparsifier", type=str, help="Sparsifier edge-list file.")
        parser.add_argument("--motifs", type=str, default="triangle",
                            help="Comma-separated motif specs (default triangle).")
        parser.add_argument("--mode", choices=MODES, default="auto",
                            help="auto scans every cut up to SPARSIFY_VERIFY_LIMIT vertices, else samples.")
        parser.add_argument("--samples", type=int, default=1000, help="Random cuts in sampled mode (default 1000).")
        parser.add_argument("--seed", type=int, default=0, help="Seed for sampled cuts (default 0).")
        parser.add_argument("--epsilon", type=float, default=0.0, help="Accepted error (default 0).")
        parser.add_argument("--induced", action="store_true", help="Count induced instances only.")
        parser.add_argument("--threads", type=int, default=None, help="Worker threads for cut evaluation.")
        parser.add_argument("--out", type=str, default=None, help="Report file (default stdout).")

    def handle(self, *args, **options):
        mode = options["mode"]
        with library_errors():
            g = read_graph(options["graph"])
            g_hat = read_graph(options["sparsifier"])
            motifs = read_motifs(options["motifs"], g)
            if mode == "auto":
                mode = "exhaustive" if g.n <= number_setting("SPARSIFY_VERIFY_LIMIT", 20, int) else "sampled"

            kwargs = {"induced": options["induced"], "epsilon": options["epsilon"], "threads": options["threads"]}
            if mode == "exhaustive":
                reports = [max_cut_error(g, g_hat, m, **kwargs) for m in motifs]
            else:
                # one cut batch for every motif
                reports = [sampled_cut_error(g, g_hat, m, options["samples"],
                                             np.random.default_rng(options["seed"]), **kwargs)
                           for m in motifs]
            report = merge_reports(reports)

        write_text(options["out"], dump_json(report.to_dict()), self.stdout)
        if not report.passed:
            raise CommandError(
                f"max relative error {report.max_relative_error:.6g} exceeds epsilon {options['epsilon']}",
                returncode=EXIT_FAILED,
            )
        if options["out"]:
            self.stdout.write(self.style.SUCCESS(
                f"Max relative error {report.max_relative_error:.6g} over {report.cuts_checked} cuts"
            ))
