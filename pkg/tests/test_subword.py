import pytest
from hypothesis import given, strategies as st

from folkbangla.corpus import Corpus
from folkbangla.subword import (
    BOS_PIECE,
    EOS_PIECE,
    MARKER,
    UNK_GLYPH,
    UNK_PIECE,
    SubwordConfigError,
    SubwordDecodeError,
    SubwordFormatError,
    SubwordTrainingError,
    decode,
    encode,
    load_model,
    save_model,
    train_subword,
)

BN_CHARS = "অকখগঘচজটতদনপবমরলশসহািীুে"


def _corpus(*texts):
    return Corpus.from_texts(list(texts))


ROUNDTRIP_MODEL = train_subword(
    _corpus(" ".join(BN_CHARS) + " ab ab রাজা রাজা"), vocab_size=120
)


class TestTraining:
    def test_first_merge_on_ababab(self):
        model = train_subword(_corpus("ababab"), vocab_size=50)
        assert model.merges[0] == ("a", "b")

    def test_single_character_corpus(self):
        model = train_subword(_corpus("ককক"), vocab_size=50)
        assert model.alphabet == frozenset("ক")
        assert model.merges == [("ক", "ক")]

    def test_zero_merges_at_base_capacity(self):
        # specials (3) + marker + alphabet {a, b}
        model = train_subword(_corpus("ababab"), vocab_size=6)
        assert model.merges == []
        assert len(model.pieces) == model.base_size == 6

    def test_vocab_size_below_base_inventory(self):
        with pytest.raises(SubwordConfigError, match="vocab_size"):
            train_subword(_corpus("ababab"), vocab_size=5)

    def test_empty_corpus(self):
        with pytest.raises(SubwordTrainingError):
            train_subword(_corpus(""), vocab_size=50)

    def test_vocab_size_cap_holds(self):
        text = "রাজা রানী রাজা রানী রাজার বাড়ি রাজা"
        base = train_subword(_corpus(text), vocab_size=1000).base_size
        for size in (base, base + 1, base + 3, base + 20):
            model = train_subword(_corpus(text), vocab_size=size)
            assert len(model.pieces) <= size

    def test_rare_pairs_not_merged(self):
        # every pair occurs once only, so no merge reaches the threshold of 2
        model = train_subword(_corpus("কখ গঘ চজ"), vocab_size=100)
        assert model.merges == []

    def test_full_merge_chain_yields_one_piece(self):
        # hand-run: (জ,া) -> (জা,marker) -> (র,া) -> (রা, জাmarker)
        model = train_subword(_corpus("রাজা রাজা রাজা রাজা রাজা"), vocab_size=100)
        assert model.merges == [
            ("জ", "া"),
            ("জা", MARKER),
            ("র", "া"),
            ("রা", "জা" + MARKER),
        ]
        seq = encode(model, "রাজা")
        assert len(seq.ids) == 1
        assert model.piece_for_id(seq.ids[0]) == "রাজা" + MARKER

    def test_training_is_deterministic(self):
        text = "রাজা রানী বন নদী রাজা রানী রাজা বন"
        a = train_subword(_corpus(text), vocab_size=40)
        b = train_subword(_corpus(text), vocab_size=40)
        assert a == b

    def test_merge_outputs_all_registered(self):
        model = train_subword(_corpus("রাজা রাজা রানী রানী রাজা"), vocab_size=60)
        base = {UNK_PIECE, BOS_PIECE, EOS_PIECE, MARKER} | model.alphabet
        assert set(model.pieces) == base | {l + r for l, r in model.merges}


class TestEncodeDecode:
    def test_encode_empty(self):
        model = train_subword(_corpus("ababab"), vocab_size=50)
        assert len(encode(model, "")) == 0

    def test_single_alphabet_char_maps_to_its_piece(self):
        model = train_subword(_corpus("কখ গঘ চজ"), vocab_size=100)
        seq = encode(model, "ক")
        assert seq.ids[0] == model.pieces["ক"]
        assert [model.piece_for_id(i) for i in seq.ids] == ["ক", MARKER]

    def test_out_of_alphabet_char_is_unk(self):
        model = train_subword(_corpus("ababab"), vocab_size=50)
        seq = encode(model, "Q")
        assert seq.ids[0] == model.unk_id
        assert decode(model, seq) == UNK_GLYPH

    def test_decode_empty(self):
        model = train_subword(_corpus("ababab"), vocab_size=50)
        assert decode(model, []) == ""

    def test_decode_out_of_range_id(self):
        model = train_subword(_corpus("ababab"), vocab_size=50)
        with pytest.raises(SubwordDecodeError, match="out of range"):
            decode(model, [len(model.pieces)])

    def test_encode_spans_cover_words(self):
        model = train_subword(_corpus("রাজা গেল"), vocab_size=60)
        text = "রাজা গেল"
        seq = encode(model, text)
        data = text.encode("utf-8")
        for pid, (start, end) in zip(seq.ids, seq.spans):
            assert 0 <= start <= end <= len(data)

    def test_encode_is_deterministic(self):
        model = train_subword(_corpus("রাজা রানী রাজা"), vocab_size=60)
        assert encode(model, "রাজা রানী").ids == encode(model, "রাজা রানী").ids

    @given(
        st.lists(
            st.text(alphabet=st.sampled_from(list(BN_CHARS + "ab")), min_size=1, max_size=8),
            min_size=1,
            max_size=10,
        )
    )
    def test_roundtrip_identity(self, words):
        text = " ".join(words)
        assert decode(ROUNDTRIP_MODEL, encode(ROUNDTRIP_MODEL, text)) == text


class TestPersistence:
    def test_roundtrip_equality(self, tmp_path):
        model = train_subword(_corpus("রাজা রানী রাজা রানী রাজা"), vocab_size=60)
        path = tmp_path / "model.bpe"
        save_model(model, path)
        assert load_model(path) == model

    def test_truncated_file(self, tmp_path):
        model = train_subword(_corpus("রাজা রাজা"), vocab_size=60)
        path = tmp_path / "model.bpe"
        save_model(model, path)
        lines = path.read_text("utf-8").splitlines()
        cut = lines.index("#merges")
        path.write_text("\n".join(lines[:cut]) + "\n", encoding="utf-8")
        with pytest.raises(SubwordFormatError, match="#merges"):
            load_model(path)

    def test_bad_header(self, tmp_path):
        path = tmp_path / "model.bpe"
        path.write_text("not-a-model\n#pieces\n", encoding="utf-8")
        with pytest.raises(SubwordFormatError, match="line 1"):
            load_model(path)

    def test_bad_piece_row_reports_line(self, tmp_path):
        model = train_subword(_corpus("ab ab"), vocab_size=30)
        path = tmp_path / "model.bpe"
        save_model(model, path)
        lines = path.read_text("utf-8").splitlines()
        lines[3] = "mangled row without tab"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        with pytest.raises(SubwordFormatError, match="line 4"):
            load_model(path)

    def test_empty_path_is_io_error(self):
        model = train_subword(_corpus("ab ab"), vocab_size=30)
        with pytest.raises(OSError):
            save_model(model, "")


class TestMergeReplay:
    def test_replay_reproduces_vocabulary(self):
        corpus = _corpus("রাজা রানী রাজার বাড়ি রাজা রানী রাজা")
        model = train_subword(corpus, vocab_size=60)
        seen = set()
        for doc in corpus.documents:
            for word in doc.normalized_text.split():
                seq = encode(model, word)
                seen |= {model.piece_for_id(pid) for pid in seq.ids}
        assert seen <= set(model.pieces)
        # every learned merge output is a registered piece
        for left, right in model.merges:
            assert left + right in model.pieces
