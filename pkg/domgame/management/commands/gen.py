from domgame.choices import GeneratorModel
from domgame.graph_core import encode_graph6
from domgame.verify_harness import gen_min_degree_graph

from ._base import DomGameCommand


class Command(DomGameCommand):
    help = 'Generate seeded random graphs of a given minimum degree, one graph6 line each.'

    def add_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True)
        parser.add_argument('--delta', type=int, required=True)
        parser.add_argument('--model', choices=GeneratorModel.values, default=GeneratorModel.REGULAR_PAIRING.value)
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--count', type=int, default=1)
        parser.add_argument('--out', help='write to this .g6 file instead of stdout')

    def handle(self, *args, **options):
        lines = [
            encode_graph6(gen_min_degree_graph(options['n'], options['delta'], options['model'], options['seed'] + k))
            for k in range(options['count'])
        ]
        if options['out']:
            with open(options['out'], 'w') as handle:
                handle.write('\n'.join(lines) + '\n')
            self.stdout.write(f"wrote {len(lines)} graphs to {options['out']}")
        else:
            for line in lines:
                self.stdout.write(line)
