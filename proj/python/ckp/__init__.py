# Copyright 2026 The CKP Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Complex-demand knapsack solvers.

Instances are dicts in the same JSON schema the ckp CLI reads. Rational
parameters may be given as int, str ("p/q") or fractions.Fraction; rationals
in results come back as "p/q" strings, see `to_fraction`.
"""

import json
from fractions import Fraction

from ckp import _ckp

CkpError = _ckp.CkpError

__all__ = [
    "CkpError",
    "audit",
    "bifptas",
    "gen_random",
    "gen_subsum",
    "instance_hash",
    "make_range",
    "mechanism",
    "multifptas",
    "oracle",
    "ptas",
    "to_fraction",
    "validate",
]


def _q(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (int, str)):
        return str(x)
    raise TypeError(f"expected int, str or Fraction, got {type(x).__name__}")


def _text(instance):
    return instance if isinstance(instance, str) else json.dumps(instance)


def to_fraction(text):
    return Fraction(text)


def validate(instance):
    return json.loads(_ckp.validate(_text(instance)))


def instance_hash(instance):
    return _ckp.instance_hash(_text(instance))


def bifptas(instance, eps, jobs=1):
    return json.loads(_ckp.fptas(_text(instance), _q(eps), multi=False, jobs=jobs))


def multifptas(instance, eps, full_grid=False, jobs=1):
    return json.loads(
        _ckp.fptas(_text(instance), _q(eps), multi=True, full_grid=full_grid, jobs=jobs)
    )


def oracle(instance, beta=1):
    return json.loads(_ckp.oracle(_text(instance), _q(beta)))


def ptas(instance, box, eps):
    c1, c2 = box
    return json.loads(_ckp.ptas(_text(instance), _q(c1), _q(c2), _q(eps)))


def mechanism(instance, eps, jobs=1):
    return json.loads(_ckp.mechanism(_text(instance), _q(eps), jobs))


def audit(instance, eps, trials=100, seed=1):
    return json.loads(_ckp.audit(_text(instance), _q(eps), trials, seed))


def make_range(capacity, num_users, eps, power_factor_bound):
    return json.loads(
        _ckp.make_range(_q(capacity), num_users, _q(eps), _q(power_factor_bound))
    )


def gen_random(num_users=5, option_count=2, quadrant_mix=0, seed=1, capacity=10,
               power_factor_bound=2, denominator=4, max_value=20):
    return json.loads(
        _ckp.gen_random(num_users, option_count, _q(quadrant_mix), seed, capacity,
                        _q(power_factor_bound), denominator, max_value)
    )


def gen_subsum(a, b, cot=1, alpha=Fraction(1, 2)):
    return json.loads(_ckp.gen_subsum(list(a), b, _q(cot), _q(alpha)))
