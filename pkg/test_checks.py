"""Tests for the property-check framework behind `witness-check`."""

import pytest

from src.checks import (
    CheckContext, CheckManager, PropertyCheck, Severity, Violation, ZPReconstructionCheck, default_checks,
)
from src.data.generator import InstanceFamily, InstanceGenerator
from src.errors import InvariantViolation, WitnessPreconditionError
from src.model.events import working_epsilon
from src.reporting.violations import ViolationSummary


def random_instance(n, d, seed, family='hypercube'):
    return InstanceGenerator(InstanceFamily(family, n=n, d=d)).generate(seed=seed).instance


class AlwaysFails(PropertyCheck):
    def __init__(self):
        super().__init__("always_fails", Severity.LOW)

    def check(self, context):
        return [self.violation("forced failure", context.pareto[0], note="test")]


class NeedsMore(PropertyCheck):
    def __init__(self):
        super().__init__("needs_more")

    def check(self, context):
        raise WitnessPreconditionError("instance too small")


@pytest.mark.parametrize("n,d,family", [(8, 1, 'hypercube'), (8, 2, 'hypercube'), (9, 2, 'explicit-random')])
def test_default_checks_pass_on_random_instances(n, d, family):
    for seed in range(2):
        inst = random_instance(n, d, seed, family)
        manager = CheckManager(default_checks())
        violations = manager.run(CheckContext(inst, seed=seed))
        assert violations == [], [v.to_dict() for v in violations]
        manager.raise_for_violations()
        skipped = [name for name, count in manager.results.items() if count < 0]
        if 2 * (d + 1) <= n - (d + 1):
            assert skipped == []
        else:
            assert skipped == ['multi_certificate']


def test_context_defaults():
    inst = random_instance(6, 1, 0)
    context = CheckContext(inst)
    assert context.eps == working_epsilon(inst)
    assert context.blocks == ()
    assert context.pareto == sorted(context.pareto)
    assert context.rng(1).random() == CheckContext(inst).rng(1).random()


def test_zero_preserving_checks_need_a_partition():
    manager = CheckManager(default_checks(zero_preserving=True))
    assert manager.run(CheckContext(random_instance(6, 1, 0))) == []
    assert set(manager.results.values()) == {-1}


def test_violations_are_collected_and_raised():
    manager = CheckManager([AlwaysFails(), NeedsMore()])
    violations = manager.run(CheckContext(random_instance(6, 1, 1)))
    assert [v.check_name for v in violations] == ['always_fails', 'needs_more']
    assert violations[1].message.startswith("precondition failed")
    assert manager.results == {'always_fails': 1, 'needs_more': 1}
    with pytest.raises(InvariantViolation) as info:
        manager.raise_for_violations()
    assert len(info.value.violations) == 2

    restored = Violation.from_dict(violations[0].to_dict())
    assert restored == violations[0]
    assert restored.metadata == {'note': 'test'}

    manager.reset()
    assert manager.get_all_violations() == []
    assert manager.checks[0].get_violations() == []


def test_violation_summary():
    manager = CheckManager([AlwaysFails(), NeedsMore()])
    violations = manager.run(CheckContext(random_instance(6, 1, 1)))
    summary = ViolationSummary(manager.results)
    summary.add_violations(violations)
    data = summary.generate_summary()
    assert data['total_violations'] == 2
    assert data['by_severity'] == {'low': 1, 'high': 1}
    assert data['by_check'] == {'always_fails': 1, 'needs_more': 1}
    text = summary.format_summary(limit=1)
    assert "FAILED" in text
    assert "1 more" in text
    # HIGH ranks before LOW
    assert "needs_more" in text
    assert "forced failure" not in text


@pytest.mark.parametrize("seed", range(5))
def test_zero_preserving_masking_check_on_random_instances(seed):
    generated = InstanceGenerator(InstanceFamily('zp-explicit', n=14, d=2)).generate(seed=seed)
    manager = CheckManager([ZPReconstructionCheck()])
    violations = manager.run(CheckContext(generated.instance, generated.partition, seed=seed))
    assert violations == [], [v.to_dict() for v in violations]
    assert manager.results == {'zp_reconstruction': 0}
