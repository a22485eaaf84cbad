"""
Management command to run the seeded acceptance experiments and record them.

Examples:
  python manage.py bench --quick
  python manage.py bench --experiment weights-oracle --seeds 100
  python manage.py bench --experiment quality --experiment size --format csv
  python manage.py bench --history 20
"""
import csv
import io

from django.core.management.base import BaseCommand, CommandError

from sparsifier.bench import EXPERIMENTS, run_experiment
from sparsifier.cli import EXIT_FAILED, dump_json, write_text
from sparsifier.models import ExperimentRun


class Command(BaseCommand):
    help = "Run the acceptance experiments (weights oracle, strengths, sandwich, quality, size, critical, lower bound, determinism)."

    def add_arguments(self, parser):
        parser.add_argument(
            "--experiment",
            action="append",
            choices=sorted(EXPERIMENTS),
            default=None,
            help="Experiment to run; repeat for several (default all).",
        )
        parser.add_argument("--seeds", type=int, default=None, help="Number of seeds 0..N-1 (default per experiment).")
        parser.add_argument("--quick", action="store_true", help="Smaller graphs and fewer seeds.")
        parser.add_argument("--rounds", type=int, default=None, help="Override the tuned round counts.")
        parser.add_argument("--threads", type=int, default=None, help="Worker threads for cut evaluation.")
        parser.add_argument("--format", choices=("json", "csv"), default="json")
        parser.add_argument("--out", type=str, default=None, help="Summary file (default stdout).")
        parser.add_argument("--history", type=int, default=None, metavar="N",
                            help="List the N most recent recorded runs instead of running anything.")

    def handle(self, *args, **options):
        if options["history"] is not None:
            self._show_history(options["history"])
            return

        names = options["experiment"] or list(EXPERIMENTS)
        results = {}
        for name in names:
            self.stdout.write(f"Running {name}...")
            result = run_experiment(name, seeds=options["seeds"], quick=options["quick"],
                                    threads=options["threads"], rounds=options["rounds"])
            results[name] = result
            ExperimentRun.objects.create(
                command="bench",
                name=name,
                seed=0,
                params={"seeds": options["seeds"], "quick": options["quick"], "rounds": options["rounds"]},
                result=result,
                passed=result["passed"],
            )
            style = self.style.SUCCESS if result["passed"] else self.style.ERROR
            self.stdout.write(style(f"{name}: {'pass' if result['passed'] else 'FAIL'} ({result['seconds']}s)"))

        if options["format"] == "csv":
            buffer = io.StringIO()
            writer = csv.writer(buffer)
            writer.writerow(["experiment", "passed", "seconds"])
            for name, result in results.items():
                writer.writerow([name, int(result["passed"]), result["seconds"]])
            text = buffer.getvalue()
        else:
            text = dump_json(results)
        write_text(options["out"], text, self.stdout)

        failed = [name for name, result in results.items() if not result["passed"]]
        if failed:
            raise CommandError(f"experiments failed: {', '.join(failed)}", returncode=EXIT_FAILED)

    def _show_history(self, limit):
        runs = ExperimentRun.objects.all()[:limit]
        if not runs:
            self.stdout.write("No recorded runs.")
            return
        for run in runs:
            self.stdout.write(f"{run.created_at:%Y-%m-%d %H:%M:%S}  {run}")
