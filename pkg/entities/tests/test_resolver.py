from django.test import SimpleTestCase

from entities.kb import IS_COMPOSED_OF, IS_LEADED_BY, IS_LOCATED_IN, KIND_OF, parse_templates
from entities.resolver import attribute_rank, parse_description, resolve, resolve_all
from entities.tokenizer import tokenize

from .utils import bundled_hierarchy, bundled_pipeline

HEADS = {'organisation': 'organization', 'agence': 'organization', 'ville': 'location'}


class BundledResolutionTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.pipeline = bundled_pipeline()

    def resolve_one(self, text):
        [resolution] = self.pipeline.resolve('doc', text)
        return resolution

    def test_leader_inversion(self):
        resolution = self.resolve_one("L'organisation de Kofi Annan a voté une résolution.")
        self.assertEqual(resolution.resolved_entity, 'ONU')
        self.assertEqual(resolution.justification, 'IsLeadedBy(ONU)=Kofi_Annan')
        self.assertEqual(resolution.syn(), "Syn(L'organisation de Kofi Annan) = ONU")
        self.assertEqual(resolution.description.span.start, 0)

    def test_more_descriptions(self):
        cases = [
            ("La ville de Bertrand Delanoë prépare la conférence.", 'Paris', 'IsLeadedBy(Paris)=Bertrand_Delanoë'),
            ("L'agence de Koïchiro Matsuura a condamné le pillage.", 'UNESCO',
             'IsLeadedBy(UNESCO)=Koïchiro_Matsuura'),
            ("L'entreprise de Bill Gates a présenté ses résultats.", 'Microsoft', 'IsLeadedBy(Microsoft)=Bill_Gates'),
            ("La société de Louis Schweitzer recrute.", 'Renault', 'IsLeadedBy(Renault)=Louis_Schweitzer'),
        ]
        for text, entity_id, justification in cases:
            with self.subTest(text=text):
                resolution = self.resolve_one(text)
                self.assertEqual(resolution.resolved_entity, entity_id)
                self.assertEqual(resolution.justification, justification)

    def test_head_type_filters_candidates(self):
        resolution = self.resolve_one("La ville de Kofi Annan est loin.")
        self.assertFalse(resolution.is_resolved)
        self.assertIsNone(resolution.justification)
        self.assertEqual(resolution.syn(), "Syn(La ville de Kofi Annan) = none")

    def test_location_complement(self):
        resolution = self.resolve_one("L'organisation de New York vote.")
        self.assertEqual(resolution.resolved_entity, 'ONU')
        self.assertEqual(resolution.justification, 'IsLocatedIn(ONU)=New_York')

    def test_no_description(self):
        self.assertEqual(self.pipeline.resolve('doc', "Kofi Annan dirige l'ONU."), [])
        self.assertEqual(self.pipeline.resolve('doc', "L'organisation de la ville."), [])


class AmbiguityTests(SimpleTestCase):
    TEMPLATES = """\
entity\tOMC\torganization
attr\tIsLocatedIn\tGenève

entity\tCICR\torganization
attr\tIsLocatedIn\tGenève

entity\tGenève\tlocation
attr\tIsLocatedIn\tSuisse
"""

    def setUp(self):
        self.hierarchy = bundled_hierarchy()
        self.store = parse_templates(self.TEMPLATES, self.hierarchy)

    def resolve_text(self, text, store=None):
        return resolve_all(text, tokenize(text), HEADS, store or self.store, self.hierarchy)

    def test_two_organizations_in_one_city(self):
        [resolution] = self.resolve_text("L'organisation de Genève vote.")
        self.assertEqual(resolution.resolved_entity, 'CICR')
        self.assertEqual(resolution.candidates, (('CICR', IS_LOCATED_IN), ('OMC', IS_LOCATED_IN)))

    def test_leadership_outranks_location(self):
        store = parse_templates(self.TEMPLATES + "\nentity\tZZ\torganization\nattr\tIsLeadedBy\tGenève\n",
                                self.hierarchy)
        [resolution] = self.resolve_text("L'organisation de Genève vote.", store)
        self.assertEqual(resolution.resolved_entity, 'ZZ')
        self.assertEqual(resolution.justification, 'IsLeadedBy(ZZ)=Genève')
        self.assertEqual(len(resolution.candidates), 3)

    def test_curly_elision_and_de(self):
        [description] = parse_description("L’agence d’Anne Durand ferme.", tokenize("L’agence d’Anne Durand ferme."),
                                          HEADS)
        self.assertEqual(description.head_noun, 'agence')
        self.assertEqual(description.complement, 'Anne Durand')
        self.assertEqual(description.surface, "L’agence d’Anne Durand")

    def test_unresolved_description_is_reported(self):
        [resolution] = self.resolve_text("La ville de Marie Curie est loin.")
        self.assertFalse(resolution.is_resolved)
        self.assertEqual(resolution.candidates, ())

    def test_attribute_rank(self):
        ordered = sorted(['Zeta', KIND_OF, IS_LOCATED_IN, 'Alpha', IS_LEADED_BY, IS_COMPOSED_OF], key=attribute_rank)
        self.assertEqual(ordered, [IS_LEADED_BY, IS_COMPOSED_OF, IS_LOCATED_IN, KIND_OF, 'Alpha', 'Zeta'])

    def test_resolve_uses_description_type(self):
        [description] = parse_description("La ville de Suisse.", tokenize("La ville de Suisse."), HEADS)
        self.assertEqual(resolve(description, self.store, self.hierarchy).resolved_entity, 'Genève')
