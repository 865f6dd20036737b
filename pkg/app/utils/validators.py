"""
Validation utilities for scenario data
"""

from typing import Iterable, List, Optional, Sequence

from app.core.exceptions import ScenarioError
from app.services.exactla import Field, Scalar, is_prime


class ScenarioValidator:
    """Utility class for scenario and group-datum validation"""

    @staticmethod
    def validate_field(kind: str, p: Optional[int]) -> None:
        """
        Validate a coefficient field specification

        Args:
            kind: "rationals" or "prime"
            p: Characteristic for prime fields

        Raises:
            ScenarioError: If the specification is inconsistent
        """
        if kind == "rationals":
            if p is not None:
                raise ScenarioError("the rationals take no characteristic")
            return
        if kind != "prime":
            raise ScenarioError(f"unknown field kind {kind!r}")
        if p is None or not is_prime(p):
            raise ScenarioError(f"field characteristic must be a prime, got {p}")

    @staticmethod
    def validate_group_orders(orders: Sequence[int], name: str) -> None:
        """
        Validate the cyclic factor orders of an abelian group

        Raises:
            ScenarioError: If a factor order is not a positive integer
        """
        if not orders:
            raise ScenarioError(f"group {name} needs at least one cyclic factor")
        for r, order in enumerate(orders):
            if order < 1:
                raise ScenarioError(f"factor {r} of group {name} has order {order}; orders must be >= 1")

    @staticmethod
    def validate_grade(grade: Sequence[int], orders: Sequence[int], name: str) -> None:
        if len(grade) != len(orders):
            raise ScenarioError(f"grade of {name} needs {len(orders)} exponents, got {len(grade)}")
        for exponent, order in zip(grade, orders):
            if not 0 <= exponent < order:
                raise ScenarioError(f"grade of {name} has exponent {exponent} outside [0, {order})")

    @staticmethod
    def validate_character(values: Sequence[Scalar], orders: Sequence[int], field: Field, name: str,
                           nontrivial: bool = True) -> None:
        """
        Validate a character given by its values on the group generators

        Args:
            values: χ(generator_r) for every cyclic factor r
            orders: Orders of the cyclic factors
            field: Coefficient field
            name: Label used in error messages
            nontrivial: Reject the trivial character

        Raises:
            ScenarioError: If a value is not a root of unity of the factor order
        """
        if len(values) != len(orders):
            raise ScenarioError(f"character {name} needs {len(orders)} values, got {len(values)}")
        for value, order in zip(values, orders):
            if field.power(value, order) != field.one:
                raise ScenarioError(
                    f"character {name} is not well defined: {field.format(value)}^{order} != 1")
        if nontrivial and all(value == field.one for value in values):
            raise ScenarioError(f"character {name} is trivial")

    @staticmethod
    def validate_phi(table: Sequence[Sequence[Scalar]], lambda_orders: Sequence[int],
                     gamma_orders: Sequence[int], field: Field) -> None:
        """
        Validate φ: Λ -> Γ̂ given by φ(z_r)(g_c) = table[r][c]

        Raises:
            ScenarioError: If the table does not define a homomorphism into the character group
        """
        if len(table) != len(lambda_orders):
            raise ScenarioError(f"phi needs one row per generator of Lambda ({len(lambda_orders)})")
        for r, row in enumerate(table):
            if len(row) != len(gamma_orders):
                raise ScenarioError(f"phi row {r} needs one value per generator of Gamma ({len(gamma_orders)})")
            for c, value in enumerate(row):
                for order in (lambda_orders[r], gamma_orders[c]):
                    if field.power(value, order) != field.one:
                        raise ScenarioError(
                            f"phi[{r}][{c}] = {field.format(value)} is not an {order}-th root of unity")

    @staticmethod
    def validate_s(s: Sequence[int], n: int, m: int) -> None:
        if len(s) != n:
            raise ScenarioError(f"s needs one entry per W generator ({n}), got {len(s)}")
        for i, j in enumerate(s):
            if not 0 <= j < m:
                raise ScenarioError(f"s[{i}] = {j} is not a V generator index in [0, {m})")

    @staticmethod
    def validate_lambda(lambdas: Sequence[Scalar], n: int) -> None:
        if len(lambdas) != n:
            raise ScenarioError(f"lambda needs one scalar per W generator ({n}), got {len(lambdas)}")

    @staticmethod
    def validate_cap(cap: Optional[int]) -> None:
        if cap is not None and cap < 1:
            raise ScenarioError(f"truncation cap must be at least 1, got {cap}")

    @staticmethod
    def validate_pipelines(names: Iterable[str], known: Iterable[str]) -> List[str]:
        """
        Validate requested pipeline names

        Returns:
            The names in request order without duplicates

        Raises:
            ScenarioError: If a name is unknown
        """
        known = set(known)
        seen: List[str] = []
        for name in names:
            if name not in known:
                raise ScenarioError(f"unknown pipeline {name!r}; expected one of {sorted(known)}")
            if name not in seen:
                seen.append(name)
        return seen
