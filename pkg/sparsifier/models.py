from django.db import models


class ExperimentRun(models.Model):
    """One recorded run of a bench experiment or a sparsify invocation."""
    command = models.CharField(max_length=40, help_text="Command that produced the row, e.g. bench or sparsify")
    name = models.CharField(max_length=80, help_text="Experiment name, e.g. weights-oracle")
    seed = models.IntegerField(default=0)
    params = models.JSONField(default=dict, help_text="Parameters the run was started with")
    result = models.JSONField(default=dict, help_text="Measured values and statistics")
    passed = models.BooleanField(default=False)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at']

    def __str__(self):
        status = "pass" if self.passed else "fail"
        return f"{self.command}:{self.name} seed={self.seed} ({status})"
