import json

from domgame.potential_engine import FamilySpec, phases, scheme_params, schemes

from ._base import DomGameCommand


class Command(DomGameCommand):
    help = 'Print the value-assignment parameters, stages and phase thresholds for a minimum degree d >= 4.'

    def add_arguments(self, parser):
        parser.add_argument('--d', type=int, required=True)
        parser.add_argument('--json', action='store_true', help='print JSON instead of text')

    def handle(self, *args, **options):
        params = scheme_params(options['d'])
        family = FamilySpec.min_deg(params.d)
        payload = {
            'params': params.to_dict(),
            'schemes': [scheme.to_dict() for scheme in schemes(family)],
            'phases': [
                {'phase': spec.phase, 'stage': spec.scheme.label,
                 'threshold': spec.threshold, 'staller_floor': spec.staller_floor}
                for spec in phases(family)
            ],
        }
        if options['json']:
            self.stdout.write(json.dumps(payload, indent=2, sort_keys=True))
            return
        for name, value in payload['params'].items():
            self.stdout.write(f"{name:>5} = {value}")
        for spec in payload['phases']:
            self.stdout.write(
                f"phase {spec['phase']}: {spec['stage']} threshold {spec['threshold']} "
                f"staller floor {spec['staller_floor']}")
