import random
from functools import lru_cache

from django.test import SimpleTestCase

from entities.evaluation import (
    MATCH_MODES,
    SCORE_KEYS,
    PRScores,
    fmeasure,
    load_gold,
    max_matching,
    parse_gold_line,
    score,
    to_gold_line,
)
from entities.exceptions import (
    DocumentSetMismatchError,
    GoldFormatError,
    InvalidRatioError,
    ResourceError,
    ScoringError,
)
from entities.mentions import GoldAnnotation, Mention, SemFrame, Span

from .utils import DEMO, bundled_hierarchy


def gold(doc_id, start, end, entity_type='organization', facet=None):
    return GoldAnnotation(doc_id, Span(start, end), entity_type, facet)


class FMeasureTests(SimpleTestCase):
    def test_known_values(self):
        self.assertEqual(fmeasure(0.0, 0.0), 0.0)
        self.assertEqual(fmeasure(1.0, 1.0), 1.0)
        self.assertAlmostEqual(fmeasure(0.5, 1.0), 2 / 3)

    def test_out_of_range(self):
        for p, r in ((-0.1, 0.5), (0.5, 1.5), (2.0, 2.0)):
            with self.subTest(p=p, r=r), self.assertRaises(InvalidRatioError):
                fmeasure(p, r)
        with self.assertRaises(ValueError):
            fmeasure(1.01, 0.0)

    def test_properties_over_random_pairs(self):
        rng = random.Random(1997)
        pairs = [(rng.random(), rng.random()) for _ in range(10000)]
        pairs += [(0.0, rng.random()) for _ in range(50)] + [(x, x) for x in (0.25, 0.5, 1.0)]
        for p, r in pairs:
            f = fmeasure(p, r)
            self.assertAlmostEqual(f, fmeasure(r, p), places=12)
            self.assertGreaterEqual(f, min(p, r) - 1e-12)
            self.assertLessEqual(f, max(p, r) + 1e-12)
            if p == r:
                self.assertAlmostEqual(f, p, places=12)
            if p == 0.0 or r == 0.0:
                self.assertEqual(f, 0.0)


class PRScoresTests(SimpleTestCase):
    def test_empty_sides(self):
        self.assertEqual(PRScores.from_counts(0, 0, 0).combined, 1.0)
        nothing_found = PRScores.from_counts(0, 0, 4)
        self.assertEqual((nothing_found.precision, nothing_found.recall, nothing_found.combined), (0.0, 0.0, 0.0))
        no_gold = PRScores.from_counts(0, 3, 0)
        self.assertEqual((no_gold.precision, no_gold.recall), (0.0, 0.0))

    def test_counts(self):
        scores = PRScores.from_counts(3, 4, 6)
        self.assertEqual(scores.precision, 0.75)
        self.assertEqual(scores.recall, 0.5)
        self.assertAlmostEqual(scores.combined, 0.6)


class ScoreTests(SimpleTestCase):
    def test_exact_type_match(self):
        gold_items = [gold('d', 0, 3), gold('d', 10, 15, 'person'), gold('e', 0, 5, 'location')]
        system = [gold('d', 0, 3), gold('d', 10, 15, 'location'), gold('e', 0, 4, 'location')]
        report = score(system, gold_items)
        self.assertEqual(report.overall.true_positive, 1)
        self.assertAlmostEqual(report.precision, 1 / 3)
        self.assertAlmostEqual(report.recall, 1 / 3)
        self.assertEqual(list(report.per_type), ['location', 'organization', 'person'])
        self.assertEqual(report.per_type['organization'].combined, 1.0)
        self.assertEqual(report.per_type['person'].system_total, 0)

    def test_keys(self):
        gold_items = [gold('d', 0, 3, facet='location')]
        wrong_type = [gold('d', 0, 3, 'person', 'location')]
        wrong_facet = [gold('d', 0, 3, facet='human_org')]
        self.assertEqual(score(wrong_type, gold_items, keys='span').combined, 1.0)
        self.assertEqual(score(wrong_type, gold_items, keys='type').combined, 0.0)
        self.assertEqual(score(wrong_facet, gold_items, keys='type').combined, 1.0)
        self.assertEqual(score(wrong_facet, gold_items, keys='facet').combined, 0.0)

    def test_missing_facet_means_none(self):
        self.assertEqual(score([gold('d', 0, 3, facet='none')], [gold('d', 0, 3)], keys='facet').combined, 1.0)

    def test_mentions_are_accepted(self):
        mention = Mention('ONU', Span(2, 5), 'd', SemFrame('organization', 'human_org'))
        self.assertEqual(score([mention], [gold('d', 2, 5, facet='human_org')], keys='facet').combined, 1.0)

    def test_overlap_is_one_to_one(self):
        report = score([gold('d', 0, 5), gold('d', 5, 10)], [gold('d', 0, 10)], mode='overlap')
        self.assertEqual(report.overall.true_positive, 1)
        self.assertEqual(report.precision, 0.5)
        self.assertEqual(report.recall, 1.0)

    def test_overlap_pairing_is_optimal(self):
        system = [gold('d', 0, 10), gold('d', 1, 4)]
        gold_items = [gold('d', 0, 3), gold('d', 8, 12)]
        self.assertEqual(max_matching(system, gold_items, 'overlap', 'type'), 2)
        self.assertEqual(score(system, gold_items, mode='overlap').combined, 1.0)

    def test_documents_do_not_mix(self):
        self.assertEqual(score([gold('a', 0, 3)], [gold('b', 0, 3)]).combined, 0.0)

    def test_document_checks(self):
        with self.assertRaises(DocumentSetMismatchError):
            score([gold('a', 0, 3)], [gold('b', 0, 3)], strict_documents=True)
        self.assertEqual(score([gold('a', 0, 3)], [gold('a', 0, 3)], strict_documents=True).combined, 1.0)

    def test_bad_options(self):
        with self.assertRaises(ScoringError):
            score([], [], mode='fuzzy')
        with self.assertRaises(ScoringError):
            score([], [], keys='everything')

    def test_both_empty(self):
        self.assertEqual(score([], []).combined, 1.0)


def _compatible(s, g, mode, keys):
    if mode == 'exact':
        spans_agree = (s.span.start, s.span.end) == (g.span.start, g.span.end)
    else:
        spans_agree = max(s.span.start, g.span.start) < min(s.span.end, g.span.end)
    if not spans_agree:
        return False
    if keys != 'span' and s.entity_type != g.entity_type:
        return False
    return keys != 'facet' or (s.focalisation or 'none') == (g.focalisation or 'none')


def _brute_force(system, gold_items, mode, keys):
    """Best one-to-one pairing by exhaustive search over gold subsets."""

    @lru_cache(maxsize=None)
    def best(i, used):
        if i == len(system):
            return 0
        result = best(i + 1, used)
        for j, g in enumerate(gold_items):
            if not used & (1 << j) and _compatible(system[i], g, mode, keys):
                result = max(result, 1 + best(i + 1, used | (1 << j)))
        return result

    return best(0, 0)


class OracleTests(SimpleTestCase):
    """Scores agree with an exhaustive pairing search on random documents."""

    TYPES = ['person', 'location', 'organization']
    FACETS = [None, 'none', 'location', 'human_org']

    def random_items(self, rng, doc_id):
        items = []
        for _ in range(rng.randint(0, 8)):
            start = rng.randint(0, 20)
            items.append(GoldAnnotation(doc_id, Span(start, start + rng.randint(1, 5)),
                                        rng.choice(self.TYPES), rng.choice(self.FACETS)))
        return items

    def test_against_exhaustive_search(self):
        rng = random.Random(42)
        documents = []
        for index in range(500):
            doc_id = f"doc{index}"
            documents.append((self.random_items(rng, doc_id), self.random_items(rng, doc_id)))
        system = [item for s, _ in documents for item in s]
        gold_items = [item for _, g in documents for item in g]

        for mode in MATCH_MODES:
            for keys in SCORE_KEYS:
                with self.subTest(mode=mode, keys=keys):
                    expected = sum(_brute_force(s, g, mode, keys) for s, g in documents)
                    report = score(system, gold_items, mode=mode, keys=keys)
                    self.assertEqual(report.overall.true_positive, expected)
                    self.assertAlmostEqual(report.precision, expected / len(system))
                    self.assertAlmostEqual(report.recall, expected / len(gold_items))


class GoldFileTests(SimpleTestCase):
    def test_parse_line(self):
        self.assertEqual(parse_gold_line("onu\t2\t5\torganization\tdiplomatic_org"),
                         gold('onu', 2, 5, facet='diplomatic_org'))
        self.assertEqual(parse_gold_line("onu\t2\t5\torganization").facet, 'none')

    def test_bad_lines(self):
        for line in ("onu\t2\t5", "onu\tx\t5\torganization", "onu\t5\t2\torganization", "\t2\t5\torganization"):
            with self.subTest(line=line), self.assertRaises(GoldFormatError):
                parse_gold_line(line, 'gold.tsv', 7)

    def test_gold_errors_carry_location(self):
        with self.assertRaises(ResourceError) as cm:
            parse_gold_line("onu\t2", 'gold.tsv', 7)
        self.assertTrue(str(cm.exception).startswith('gold.tsv:7: '))

    def test_type_must_be_in_the_hierarchy(self):
        hierarchy = bundled_hierarchy()
        self.assertEqual(parse_gold_line("onu\t2\t5\torganization", hierarchy=hierarchy).entity_type, 'organization')
        with self.assertRaises(GoldFormatError) as cm:
            parse_gold_line("onu\t2\t5\torganisation", 'gold.tsv', 4, hierarchy)
        self.assertEqual((cm.exception.path, cm.exception.lineno), ('gold.tsv', 4))

    def test_to_gold_line(self):
        mention = Mention('ONU', Span(2, 5), 'onu', SemFrame('organization'))
        self.assertEqual(to_gold_line(mention), "onu\t2\t5\torganization\tnone")
        self.assertEqual(parse_gold_line(to_gold_line(mention)), gold('onu', 2, 5, facet='none'))

    def test_demo_gold(self):
        items = load_gold(DEMO / 'gold.tsv', bundled_hierarchy())
        self.assertEqual({item.doc_id for item in items}, {'onu', 'paris', 'entreprises'})
        self.assertEqual({item.entity_type for item in items}, {'person', 'location', 'organization'})
        self.assertEqual({item.facet for item in items if item.entity_type == 'organization'},
                         {'none', 'diplomatic_org', 'location', 'human_org'})
        self.assertEqual(len(items), 42)
