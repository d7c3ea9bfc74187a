import random
from collections import Counter

import pytest

from folkbangla.corpus import StopwordList
from folkbangla.summarizer import (
    Summary,
    clean_sentences,
    score_sentences,
    strip_special,
    summarize,
)

WORKED_DOC = "ক খ। ক গ। ক ক।"


class TestStripSpecial:
    def test_removes_symbols(self):
        assert strip_special("রাজা*** গেলেন।") == "রাজা গেলেন।"

    def test_empty(self):
        assert strip_special("") == ""

    def test_only_specials_collapse_to_nothing(self):
        assert strip_special("@#$") == ""
        assert strip_special("@ # $") == ""

    def test_keeps_ascii_and_digits(self):
        assert strip_special("ক a1 ২!") == "ক a1 ২!"

    def test_removes_ascii_period(self):
        # the danda is the sentence mark here; ASCII '.' is a special character
        assert strip_special("ক. খ") == "ক খ"


class TestScoreSentences:
    def test_worked_example(self, no_stopwords):
        scores = score_sentences(WORKED_DOC, no_stopwords)
        assert [s.sentence_index for s in scores] == [0, 1, 2]
        assert [s.score for s in scores] == [1.25, 1.25, 2.0]

    def test_single_sentence(self, no_stopwords):
        scores = score_sentences("ক খ গ।", no_stopwords)
        assert len(scores) == 1
        assert scores[0].score == pytest.approx(3.0)

    def test_all_stopwords_scores_zero(self):
        stopwords = StopwordList(frozenset({"ক", "খ"}))
        scores = score_sentences("ক খ। খ ক।", stopwords)
        assert [s.score for s in scores] == [0.0, 0.0]

    def test_stopwords_do_not_score(self):
        stopwords = StopwordList(frozenset({"ও"}))
        scores = score_sentences("ক ও ক। খ ও।", stopwords)
        # f(ক)=2, f(খ)=1 -> n(ক)=1, n(খ)=0.5
        assert scores[0].score == pytest.approx(2.0)
        assert scores[1].score == pytest.approx(0.5)


class TestSummarize:
    def test_k1_selects_highest(self, no_stopwords):
        summary = summarize(WORKED_DOC, no_stopwords, k=1)
        assert summary.selected == (2,)
        assert summary.text == "ক ক।"

    def test_k_at_least_n_is_identity(self, no_stopwords):
        summary = summarize(WORKED_DOC, no_stopwords, k=10)
        assert summary.selected == (0, 1, 2)
        assert summary.text == "ক খ। ক গ। ক ক।"

    def test_empty_document(self, no_stopwords):
        assert summarize("", no_stopwords, k=3) == Summary((), "")

    def test_k_validation(self, no_stopwords):
        with pytest.raises(ValueError):
            summarize(WORKED_DOC, no_stopwords, k=0)

    def test_ratio_default_rounds_up(self, no_stopwords):
        text = "।".join(f"বাক্য{i} শব্দ{i}" for i in range(10)) + "।"
        summary = summarize(text, no_stopwords)
        assert len(summary.selected) == 3  # ceil(0.3 * 10)

    def test_tie_breaks_toward_earlier_sentence(self, no_stopwords):
        summary = summarize("ক খ। খ ক।", no_stopwords, k=1)
        assert summary.selected == (0,)

    def test_selected_strictly_increasing(self, no_stopwords):
        summary = summarize(WORKED_DOC, no_stopwords, k=2)
        assert list(summary.selected) == sorted(set(summary.selected))

    def test_extractiveness(self, no_stopwords):
        text = "রাজা বনে গেল। রাক্ষস মানুষ খেত। রাজা ফিরে এল।"
        sentences = clean_sentences(text)
        summary = summarize(text, no_stopwords, k=2)
        for idx, sent in zip(summary.selected, summary.text.split("। ")):
            assert sentences[idx].startswith(sent.rstrip("।") or sent)
        for idx in summary.selected:
            assert sentences[idx] in summary.text


class TestOracleAndProperties:
    def _random_doc(self, rng: random.Random):
        pool = [f"শব্দ{i}" for i in range(12)]
        sentences = []
        for _ in range(rng.randint(1, 20)):
            words = [rng.choice(pool) for _ in range(rng.randint(1, 8))]
            sentences.append(words)
        text = " ".join(" ".join(words) + "।" for words in sentences)
        return text, sentences

    def test_scores_equal_brute_force_oracle(self, no_stopwords):
        rng = random.Random(777)
        for _ in range(20):
            text, sentences = self._random_doc(rng)
            freq = Counter(w for words in sentences for w in words)
            top = max(freq.values())
            expected = [sum(freq[w] / top for w in words) for words in sentences]
            got = [s.score for s in score_sentences(text, no_stopwords)]
            assert got == pytest.approx(expected)

    def test_monotone_topk_nesting(self, no_stopwords):
        rng = random.Random(778)
        for _ in range(10):
            text, sentences = self._random_doc(rng)
            previous: set[int] = set()
            for k in range(1, len(sentences) + 1):
                selected = set(summarize(text, no_stopwords, k=k).selected)
                assert previous <= selected
                assert len(selected) == k
                previous = selected
