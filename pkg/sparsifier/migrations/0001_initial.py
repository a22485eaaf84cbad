# Generated by Django 4.2.7

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ExperimentRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('command', models.CharField(help_text='Command that produced the row, e.g. bench or sparsify', max_length=40)),
                ('name', models.CharField(help_text='Experiment name, e.g. weights-oracle', max_length=80)),
                ('seed', models.IntegerField(default=0)),
                ('params', models.JSONField(default=dict, help_text='Parameters the run was started with')),
                ('result', models.JSONField(default=dict, help_text='Measured values and statistics')),
                ('passed', models.BooleanField(default=False)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
    ]
