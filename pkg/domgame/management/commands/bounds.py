from domgame.verify_harness import compare_bounds, parse_d_range

from ._base import DomGameCommand


class Command(DomGameCommand):
    help = 'Compare the polynomial game-length coefficient with the logarithmic one for each d.'

    def add_arguments(self, parser):
        parser.add_argument('--d-range', default='3..21', help='inclusive range A..B within 3..64')

    def handle(self, *args, **options):
        rows = compare_bounds(parse_d_range(options['d_range']))
        self.stdout.write(f"{'d':>3}  {'polynomial':>10}  {'log':>10}  winner")
        for row in rows:
            data = row.to_dict()
            self.stdout.write(
                f"{row.d:>3}  {data['polynomial_approx']:>10.6f}  {data['log_approx']:>10.6f}  {row.winner}")
