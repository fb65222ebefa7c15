import pytest

from oracles import AB, all_words
from thetacode.decode import ValidCode, enumerate_codes, is_separated
from thetacode.errors import NotSeparated, SharedPartMismatch, WordTooShort
from thetacode.language import FiniteLanguage, NoWords
from thetacode.reductions import word_instance
from thetacode.rng import XorShift64Star, splitmix64
from thetacode.solver import hom_search, solve
from thetacode.structures import ThetaStructure, induced_substructure, serialize_theta
from thetacode.toolkit import (
    GenParams,
    amalgamate,
    plant_code,
    random_extension,
    random_separated,
)


def small(seed, n):
    return random_separated(GenParams(n=n, seed=seed, s=0.2))


def test_rng_is_reproducible():
    a, b = XorShift64Star(42), XorShift64Star(42)
    assert [a.next_u64() for _ in range(20)] == [b.next_u64() for _ in range(20)]
    assert XorShift64Star(1).next_u64() != XorShift64Star(2).next_u64()
    assert splitmix64(0) != 0


def test_rng_ranges():
    rng = XorShift64Star(7)
    counts = [0] * 5
    for _ in range(5000):
        counts[rng.below(5)] += 1
    assert all(800 < c < 1200 for c in counts)
    assert all(3 <= rng.randint(3, 4) <= 4 for _ in range(100))
    assert all(0.0 <= rng.random() < 1.0 for _ in range(100))
    items = list(range(10))
    rng.shuffle(items)
    assert sorted(items) == list(range(10))
    picked = rng.sample(range(10), 4)
    assert len(set(picked)) == 4


def test_generated_structures_are_separated():
    for seed in range(100):
        X = random_separated(GenParams(n=seed % 15, seed=seed, s=0.1))
        assert is_separated(X) == []


def test_generator_is_deterministic():
    p = GenParams(n=12, seed=5)
    assert serialize_theta(random_separated(p)) == serialize_theta(random_separated(p))
    q = GenParams(n=12, seed=6)
    assert serialize_theta(random_separated(p)) != serialize_theta(random_separated(q))


def test_all_p_leaves_only_p():
    X = random_separated(GenParams(n=6, p_frac=1.0, seed=3))
    assert X.P == set(range(6))
    assert not X.iota and not X.tau and not X.S
    assert all(not X.H[s] for s in AB)


def test_gen_params_validation():
    with pytest.raises(ValueError):
        GenParams(n=3, h=1.5)
    with pytest.raises(ValueError):
        GenParams(n=-1)


def test_extension_keeps_base_induced():
    for seed in range(40):
        base = small(seed, 6)
        X = random_extension(base, 4, GenParams(n=0, seed=seed, s=0.2))
        assert X.n == 10
        assert induced_substructure(X, range(6)) == base
        assert is_separated(X) == []


def test_amalgamate_with_itself_over_everything():
    for seed in range(20):
        X = small(seed, 7)
        assert amalgamate(X, X, X.n) == X


def test_amalgamate_over_nothing_is_disjoint_union():
    B, C = small(1, 4), small(2, 3)
    D = amalgamate(B, C, 0)
    assert D.n == 7
    assert induced_substructure(D, range(4)) == B
    assert induced_substructure(D, range(4, 7)) == C


def test_amalgamate_errors():
    B, C = small(1, 5), small(2, 5)
    with pytest.raises(SharedPartMismatch):
        amalgamate(B, C, 5)
    with pytest.raises(SharedPartMismatch):
        amalgamate(B, C, 6)
    bad = ThetaStructure(2, AB, P={0}, iota={0})
    with pytest.raises(NotSeparated):
        amalgamate(bad, bad, 2)


def _relabel(code, shift, shared):
    def m(x):
        return x if x < shared else x + shift

    return ValidCode(code.word, tuple(map(m, code.a)), tuple(map(m, code.c)))


def test_amalgam_codes_come_from_one_side():
    nonempty = 0
    for seed in range(80):
        rng = XorShift64Star(seed)
        shared = rng.randint(0, 3)
        base = small(seed, shared)
        B = plant_code(random_extension(base, 2, GenParams(n=0, seed=seed + 1)), "ab", seed)
        C = plant_code(random_extension(base, 2, GenParams(n=0, seed=seed + 2)), "aba", seed)
        D = amalgamate(B, C, shared)
        L = 6
        expected = set(enumerate_codes(B, L)) | {
            _relabel(c, B.n - shared, shared) for c in enumerate_codes(C, L)
        }
        assert set(enumerate_codes(D, L)) == expected
        nonempty += bool(expected)
    assert nonempty == 80


def test_plant_into_empty_structure_is_the_word_code():
    for w in all_words(AB, 2, 4):
        X = plant_code(ThetaStructure(0, AB), w, 9)
        Y = word_instance(w, AB)
        assert X.n == Y.n
        assert hom_search(X, Y) is not None and hom_search(Y, X) is not None


def test_planting_forces_no():
    words = all_words(AB, 2, 4)
    for seed in range(100):
        rng = XorShift64Star(seed)
        w = rng.choice(words)
        X = plant_code(small(seed, rng.randint(0, 8)), w, rng)
        d = solve(X, FiniteLanguage([w], AB))
        assert not d.yes and d.witness.word == w


def test_planting_preserves_yes():
    for seed in range(60):
        X = small(seed, 8)
        if not solve(X, FiniteLanguage(["ab"], AB)).yes:
            continue
        Y = plant_code(X, "ba", seed)
        assert solve(Y, FiniteLanguage(["ab"], AB)).yes
        assert solve(Y, NoWords(AB)).yes


def test_plant_rejects_short_words():
    with pytest.raises(WordTooShort):
        plant_code(ThetaStructure(0, AB), "a", 0)
