from domgame.exact_solver import minimum_dominating_set

from ._base import DomGameCommand


class Command(DomGameCommand):
    help = 'Print the domination number of a graph and one minimum dominating set.'

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument('--cap', type=int, help='largest order solved exactly')

    def handle(self, *args, **options):
        graph = self.load_graph(options['file'])
        witness = minimum_dominating_set(graph, cap=options['cap'])
        self.stdout.write(f"gamma = {len(witness)}")
        self.stdout.write(f"dominating set: {' '.join(map(str, witness))}")
