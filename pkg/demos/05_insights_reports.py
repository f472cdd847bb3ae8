# coding: utf-8

# # From comments to insights
#
# `analyze` runs the whole chain and returns a bundle. A bundle answers tag
# queries and produces frequency and combination reports, and it round-trips
# through JSON.

# In[1]:

import tempfile
from pathlib import Path

from pulsetags.datasets import load_background_vectors, load_pulse_corpus
from pulsetags.insights import (bar_chart, combination_report, comments_by_combination, comments_by_tag,
                                format_table, load_bundle, save_bundle, suggest_tags, tag_frequency)
from pulsetags.pipeline import PipelineParams, analyze


# In[2]:

bundle = analyze(load_pulse_corpus(), load_background_vectors(), PipelineParams(threshold=0.85, deterministic=True))
print(len(bundle.groups), "groups; excluded:", bundle.excluded)
for g in bundle.groups:
    print(g.id, len(g.member_ids), g.tags.terms)


# Queries are preprocessed like comments, so case and punctuation do not matter.

# In[3]:

hits = comments_by_tag(bundle, "Feedback!")
print(len(hits), "comments tagged feedback")
for c in hits[:3]:
    print(" ", c.id, c.raw_text)
print("did you mean:", suggest_tags(bundle, "feed"))


# In[4]:

both = comments_by_combination(bundle, ["work-life", "balance"])
print(len(both), "comments carry both work-life and balance")


# In[5]:

report = tag_frequency(bundle)
print(bar_chart(report.rows[:10], width=60))


# In[6]:

rows = combination_report(bundle, k_top=3, k_bottom=3)
print(format_table([(r.rank, ", ".join(r.tags), r.count) for r in rows], ("rank", "tags", "comments")))


# Deterministic bundles are byte-identical across runs, which makes them easy to diff.

# In[7]:

path = Path(tempfile.mkdtemp()) / "bundle.json"
save_bundle(bundle, path)
print(load_bundle(path) == bundle, path.stat().st_size, "bytes")
