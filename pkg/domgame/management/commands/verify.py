from pathlib import Path

from django.conf import settings

from domgame.choices import PolicyKind
from domgame.verify_harness import (
    VerifyConfig,
    atlas_graphs,
    load_corpus,
    named_graphs,
    random_graphs,
    verify_corpus,
    write_csv,
    write_json,
)

from ._base import DomGameCommand
from .play import FAMILIES


class Command(DomGameCommand):
    help = 'Check every applicable bound and strategy property on a corpus of graphs.'

    def add_arguments(self, parser):
        parser.add_argument('--corpus', help='directory of .g6 and edge-list files')
        parser.add_argument('--named', action='store_true', help='add the built-in named graphs')
        parser.add_argument('--atlas', type=int, metavar='N', help='add every connected graph with at most N vertices')
        parser.add_argument('--random', type=int, metavar='K', help='add K seeded G(n,p) graphs on 4..12 vertices')
        parser.add_argument('--family', choices=FAMILIES, default='auto')
        parser.add_argument('--cap', type=int, help='largest order solved exactly')
        parser.add_argument('--budget', type=int, help='node budget of each worst-case search')
        parser.add_argument('--seed', type=int)
        parser.add_argument('--workers', type=int)
        parser.add_argument('--no-staller-start', action='store_true')
        parser.add_argument('--csv', dest='csv_out', help='CSV report path (default: DATA_DIR/report.csv)')
        parser.add_argument('--json', dest='json_out', help='JSON report path')

    def handle(self, *args, **options):
        corpus = []
        if options['corpus']:
            corpus.extend(load_corpus(options['corpus']))
        if options['named']:
            corpus.extend(named_graphs().items())
        if options['atlas']:
            corpus.extend(atlas_graphs(options['atlas']))
        if options['random']:
            corpus.extend(random_graphs(options['random'], 4, 12, seed=options['seed'], isolate_free=True))
        if not corpus and not options['corpus']:
            raise ValueError('nothing to verify: give --corpus, --named, --atlas or --random')

        config = VerifyConfig(
            family=options['family'],
            cap=options['cap'],
            search_budget=options['budget'],
            staller_policies=(PolicyKind.RANDOM_STALLER, PolicyKind.MIN_GAIN_STALLER,
                              PolicyKind.WORST_CASE_STALLER),
            staller_start=not options['no_staller_start'],
            seed=options['seed'],
            workers=options['workers'],
        )
        report = verify_corpus(corpus, config)

        csv_out = Path(options['csv_out'] or Path(settings.DATA_DIR) / 'report.csv')
        csv_out.parent.mkdir(parents=True, exist_ok=True)
        write_csv(report, csv_out)
        self.stdout.write(f"wrote {csv_out}")
        if options['json_out']:
            write_json(report, options['json_out'])
            self.stdout.write(f"wrote {options['json_out']}")

        summary = report.summary
        self.stdout.write(
            f"{summary['graphs']} graphs, {summary['rows']} rows: {summary['pass']} pass, "
            f"{summary['fail']} fail, {summary['undecided']} undecided, {summary['skip']} skip, "
            f"{summary['error']} error, {summary['lemma_violations']} lemma violations")
        if not report.ok:
            self.fail('verification failed')
