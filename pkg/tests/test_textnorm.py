"""Tokenizer and normalization pipeline behavior."""

import random
import string

from geoconflict.textnorm import (
    DEFAULT_PIPELINE,
    PipelineConfig,
    load_stopwords,
    normalize,
    tokenize,
)


class TestTokenize:
    def test_empty(self):
        assert tokenize("") == []

    def test_splits_on_non_alphanumerics(self):
        assert tokenize("Laurier Lounge & Restaurant") == ["Laurier", "Lounge", "Restaurant"]
        assert tokenize("McDonald's #123") == ["McDonald", "s", "123"]

    def test_underscore_splits(self):
        assert tokenize("a_b") == ["a", "b"]

    def test_keeps_digits_and_order(self):
        assert tokenize("12 Main St, Unit 7") == ["12", "Main", "St", "Unit", "7"]

    def test_non_ascii_letters_kept(self):
        assert tokenize("Café Montréal") == ["Café", "Montréal"]


class TestNormalize:
    def test_empty(self):
        assert normalize("") == []

    def test_stopword_then_stem(self):
        cfg = PipelineConfig(stopwords=frozenset({"the"}))
        assert normalize("The Restaurant", cfg) == ["restaur"]

    def test_case_and_inflection_unify(self):
        terms = normalize("Lounges lounge LOUNGE")
        assert len(terms) == 3 and len(set(terms)) == 1

    def test_never_emits_stopwords_or_uppercase(self):
        out = normalize("The Wild AND THE Young", DEFAULT_PIPELINE)
        assert all(t == t.lower() for t in out)
        assert not set(out) & DEFAULT_PIPELINE.stopwords
        assert all(t and " " not in t for t in out)

    def test_stemming_can_be_disabled(self):
        cfg = PipelineConfig(stopwords=frozenset(), stem_enabled=False)
        assert normalize("Lounges", cfg) == ["lounges"]

    def test_non_ascii_lowercased_not_transliterated(self):
        assert normalize("CAFÉ", PipelineConfig(stopwords=frozenset())) == ["café"]

    def test_idempotent_on_own_output(self):
        # Random name-like strings; rejoining normalized output and
        # normalizing again must be a fixed point.
        rng = random.Random(41)
        alphabet = string.ascii_letters + string.digits + " '&-.#"
        for _ in range(300):
            text = "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 40)))
            once = normalize(text)
            again = normalize(" ".join(once))
            assert once == again


class TestStopwordFile:
    def test_load_with_comments(self, tmp_path):
        f = tmp_path / "stop.txt"
        f.write_text("# comment\nthe\nAND # trailing\n\nof\n", encoding="utf-8")
        assert load_stopwords(f) == frozenset({"the", "and", "of"})

    def test_default_list_is_classic_33(self):
        assert len(DEFAULT_PIPELINE.stopwords) == 33
        assert "the" in DEFAULT_PIPELINE.stopwords
        assert all(w == w.lower() for w in DEFAULT_PIPELINE.stopwords)
