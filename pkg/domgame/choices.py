"""Enumerations shared by the engine, the strategies and the harness."""
from django.db import models


class Player(models.TextChoices):
    DOMINATOR = 'D', 'Dominator'
    STALLER = 'S', 'Staller'

    @property
    def other(self) -> "Player":
        return Player.STALLER if self is Player.DOMINATOR else Player.DOMINATOR


class Color(models.TextChoices):
    WHITE = 'W', 'White'
    BLUE = 'B', 'Blue'
    RED = 'R', 'Red'


class Family(models.TextChoices):
    TWO_THIRDS = 'two-thirds', 'Isolate-free graphs (2/1/0 values)'
    DEG3 = 'deg3', 'Minimum degree 3 (stages A1.1 to A1.3)'
    MIN_DEG = 'mindeg', 'Minimum degree d >= 4 (stages A2.1 to A2.4)'


class PolicyKind(models.TextChoices):
    GREEDY_DOMINATOR = 'greedy', 'Greedy Dominator'
    EXACT_OPTIMAL = 'exact', 'Exact optimal play'
    RANDOM_STALLER = 'random', 'Random Staller'
    MIN_GAIN_STALLER = 'min-gain', 'Minimum-gain Staller'
    WORST_CASE_STALLER = 'worst', 'Worst-case Staller'


class BoundFamily(models.TextChoices):
    GENERAL_23 = 'general23', 'gamma_g <= 2n/3'
    GENERAL_710 = 'general710', 'gamma_g <= ceil(7n/10)'
    DEG3 = 'deg3', 'gamma_g <= 34n/61'
    DEG3_STALLER_START = 'deg3-staller', "gamma_g' <= (34n-27)/61"
    MIN_DEG = 'mindeg', 'gamma_g <= a(d)n/s(d)'
    MIN_DEG_STALLER_START = 'mindeg-staller', "gamma_g' <= (a n - (a + d(a-b) - s))/s"
    LOG_BOUND = 'log', 'gamma_g < 2(1+ln(delta+1))/(delta+1) n'
    DOMINATION_LOG = 'domination-log', 'gamma <= (1+ln(delta+1))/(delta+1) n'
    SANDWICH = 'sandwich', 'gamma <= gamma_g <= 2 gamma - 1'


class GeneratorModel(models.TextChoices):
    REGULAR_PAIRING = 'regular-pairing', 'Random regular graph (pairing model)'
    FLOOR_REPAIR = 'degree-floor-repair', 'G(n,p) with minimum-degree repair'


class RowStatus(models.TextChoices):
    PASS = 'pass', 'Pass'
    FAIL = 'fail', 'Fail'
    UNDECIDED = 'undecided', 'Undecided'
    SKIP = 'skip', 'Skipped'
    ERROR = 'error', 'Error'
