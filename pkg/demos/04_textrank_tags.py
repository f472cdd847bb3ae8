# coding: utf-8

# # Tagging groups with TextRank
#
# Inside a group, terms that appear within a small window of each other are
# linked. Scores come from the damped recurrence
# S(v) = (1 - d) + d * sum over neighbours u of S(u) / out(u),
# iterated from all ones until no score moves by more than epsilon.

# In[1]:

import numpy as np

from pulsetags.corpus import Corpus
from pulsetags.grouping import Group
from pulsetags.keywords import KeywordParams, assign_tags, build_term_graph, rank_terms, textrank


# A star: one hub linked to three leaves. The hub ends near 1.919 and each leaf near 0.694.

# In[2]:

star = build_term_graph([["hub", "leafa"], ["hub", "leafb"], ["hub", "leafc"]], window=1)
r = textrank(star, d=0.85, epsilon=1e-10, max_iter=1000)
print(rank_terms(r.scores), "iterations:", r.iterations)


# The same fixed point can be found by solving (I - dM) S = (1 - d) 1 directly.

# In[3]:

n = len(star.terms)
M = np.zeros((n, n))
M[star.dst, star.src] = 1.0
M /= M.sum(axis=0)
print(dict(zip(star.terms, np.round(np.linalg.solve(np.eye(n) - 0.85 * M, np.full(n, 0.15)), 4))))


# Tagging a group of comments. The number of tags is ceil(terms / 3), capped at 5.

# In[4]:

corpus = Corpus.from_texts([
    "Great feedback from my manager every week",
    "Manager feedback is timely and specific",
    "More feedback on career growth please",
])
group = Group(0, tuple(c.id for c in corpus))
tags = assign_tags(group, corpus, KeywordParams(window=2, tag_cap=5))
for term, score in tags.tags:
    print(f"{term:10s} {score:.3f}")


# A single comment with one distinct term has no graph, so term frequency is used instead.

# In[5]:

tiny = Corpus.from_texts(["Great!"])
print(assign_tags(Group(0, ("c1",)), tiny).tags)
