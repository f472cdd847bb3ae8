import json

import pytest

from pulsetags.corpus import Comment, Corpus
from pulsetags.errors import MigrationError, ParseError, ValidationError
from pulsetags.grouping import Group
from pulsetags.insights import (AnalysisBundle, bar_chart, bundle_digest, combination_report, combinations,
                                comments_by_combination, comments_by_tag, format_table, load_bundle,
                                save_bundle, suggest_tags, tag_frequency)
from pulsetags.keywords import TagAssignment


def make_bundle(*groups):
    """``groups``: (size, tags) pairs; comment ids are ``g{i}m{j}``."""
    comments, out = [], []
    for i, (size, tags) in enumerate(groups):
        ids = tuple(f"g{i}m{j:02d}" for j in range(size))
        comments += [Comment(c, f"text {c}", ("text",)) for c in ids]
        scores = [(t, float(len(tags) - k)) for k, t in enumerate(tags)]
        out.append(Group(i, ids, TagAssignment(i, tuple(scores))))
    return AnalysisBundle(Corpus(comments, "test"), out, {"threshold": 0.85}, "1970-01-01T00:00:00Z")


def test_comments_by_tag_sorted_union():
    b = make_bundle((3, ["x", "y"]), (2, ["y"]), (1, ["z"]))
    hits = comments_by_tag(b, "y")
    assert [c.id for c in hits] == sorted(c.id for c in hits)
    assert len(hits) == 5
    assert comments_by_tag(b, "missing") == []


def test_query_is_preprocessed():
    b = make_bundle((2, ["feedback"]), (1, ["work-life"]))
    assert comments_by_tag(b, "FEEDBACK!!") == comments_by_tag(b, "feedback")
    assert len(comments_by_tag(b, "Work-Life")) == 1
    assert comments_by_tag(b, "the") == []


def test_suggestions_by_prefix():
    b = make_bundle((2, ["feedback", "manager"]), (1, ["fees"]))
    assert suggest_tags(b, "feed") == ["feedback", "fees"]
    assert suggest_tags(b, "mana") == ["manager"]
    assert suggest_tags(b, "feedback") == ["fees"]
    assert suggest_tags(b, "zzzz") == []


def test_combination_report_counts_are_group_sizes():
    b = make_bundle((10, ["a", "b"]), (5, ["c"]), (1, ["d", "e"]))
    assert [r.count for r in combination_report(b, 3, 3)] == [10, 5, 1]


def test_combination_merge_by_tag_set():
    b = make_bundle((3, ["alpha", "beta"]), (4, ["beta", "alpha"]))
    rows = combinations(b)
    assert len(rows) == 1
    assert rows[0].count == 7
    assert rows[0].tags == ("beta", "alpha")  # order of the larger group


def test_combination_report_layout_top_and_bottom():
    groups = [(60 - i, [f"tag{chr(97 + i // 26)}{chr(97 + i % 26)}"]) for i in range(59)]
    rows = combination_report(make_bundle(*groups), k_top=3, k_bottom=3)
    assert len(rows) == 6
    assert [r.rank for r in rows] == [1, 2, 3, 57, 58, 59]
    assert [r.count for r in rows] == [60, 59, 58, 4, 3, 2]


def test_combination_report_small_bundle_no_duplicates():
    rows = combination_report(make_bundle((2, ["a"]), (1, ["b"])), 3, 3)
    assert [r.rank for r in rows] == [1, 2]


def test_combination_ties_lexicographic():
    rows = combinations(make_bundle((2, ["zeta"]), (2, ["alpha"])))
    assert [r.tags for r in rows] == [("alpha",), ("zeta",)]


def test_comments_by_combination():
    b = make_bundle((3, ["work-life", "balance", "hours"]), (2, ["balance"]), (1, ["work-life"]))
    assert len(comments_by_combination(b, ["work-life", "balance"])) == 3
    assert comments_by_combination(b, ["balance"]) == comments_by_tag(b, "balance")
    assert comments_by_combination(b, ["balance", "zzz"]) == []
    with pytest.raises(ValidationError):
        comments_by_combination(b, [])


def test_tag_frequency():
    b = make_bundle((4, ["x", "y"]))
    assert tag_frequency(b).rows == [("x", 4), ("y", 4)]
    assert tag_frequency(make_bundle()).rows == []
    b = make_bundle((4, ["x", "y"]), (6, ["y"]), (1, ["b"]), (1, ["a"]))
    assert tag_frequency(b).rows == [("y", 10), ("x", 4), ("a", 1), ("b", 1)]


def test_tag_frequency_matches_naive_recount(pulse_bundle):
    naive = {}
    for c in pulse_bundle.corpus:
        for g in pulse_bundle.groups:
            if c.id in g.member_ids:
                for t in g.tags.terms:
                    naive[t] = naive.get(t, 0) + 1
    assert dict(tag_frequency(pulse_bundle).rows) == naive


def test_query_report_consistency(pulse_bundle):
    for tag, n in tag_frequency(pulse_bundle).rows:
        assert len(comments_by_tag(pulse_bundle, tag)) == n
    for row in combinations(pulse_bundle):
        assert len(comments_by_combination(pulse_bundle, row.tags)) >= row.count


def test_queries_are_read_only(pulse_bundle):
    before = bundle_digest(pulse_bundle)
    comments_by_tag(pulse_bundle, "feedback")
    comments_by_combination(pulse_bundle, ["work-life", "balance"])
    combination_report(pulse_bundle, 2, 2)
    tag_frequency(pulse_bundle)
    suggest_tags(pulse_bundle, "fee")
    assert bundle_digest(pulse_bundle) == before


def test_bundle_round_trip(tmp_path, pulse_bundle):
    p = tmp_path / "b.json"
    save_bundle(pulse_bundle, p)
    back = load_bundle(p)
    assert back == pulse_bundle
    assert back.params == pulse_bundle.params


def test_bundle_rejects_unknown_members():
    with pytest.raises(ValidationError):
        AnalysisBundle(Corpus([], ""), [Group(0, ("ghost",))], {}, "")


def test_load_newer_version(tmp_path, pulse_bundle):
    p = tmp_path / "b.json"
    save_bundle(pulse_bundle, p)
    data = json.loads(p.read_text())
    data["tool_version"] = "99.0.0"
    p.write_text(json.dumps(data))
    with pytest.raises(MigrationError, match="99.0.0"):
        load_bundle(p)


def test_load_truncated(tmp_path, pulse_bundle):
    p = tmp_path / "b.json"
    save_bundle(pulse_bundle, p)
    p.write_text(p.read_text()[:200])
    with pytest.raises(ParseError):
        load_bundle(p)


def test_load_wrong_document(tmp_path):
    p = tmp_path / "b.json"
    p.write_text('{"hello": 1}')
    with pytest.raises(ParseError):
        load_bundle(p)


def test_text_rendering():
    table = format_table([(1, "a, b", 10)], ("rank", "tags", "comments"))
    assert table.splitlines()[0].split() == ["rank", "tags", "comments"]
    chart = bar_chart([("alpha", 10), ("b", 5)], width=30)
    lines = chart.splitlines()
    assert lines[0].startswith("alpha ") and lines[0].endswith(" 10")
    assert lines[0].count("#") == 2 * lines[1].count("#")
    assert bar_chart([]) == ""
