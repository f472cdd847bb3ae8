# coding: utf-8

# # Grouping comments by relevancy
#
# Each pair of comments is scored by the cosine of their comment vectors. Pairs at
# or above the threshold become edges, and every connected component is a group.

# In[1]:

from collections import Counter

import numpy as np

from pulsetags.datasets import load_background_vectors, load_pulse_corpus, planted_labels
from pulsetags.grouping import build_graph, connected_components
from pulsetags.similarity import comment_vectors, pairwise_relevancy


# The planted corpus has 60 comments on three topics. The background vectors were
# trained on a generated text collection that uses the same vocabulary.

# In[2]:

corpus = load_pulse_corpus()
model = load_background_vectors()
labels = planted_labels()
print(len(corpus), "comments;", Counter(labels.values()))


# In[3]:

vectors = comment_vectors(corpus, model)
scores = pairwise_relevancy(corpus, model)
print(len(scores), "pairs")
print("highest:", max(scores, key=lambda s: s.score))
print("lowest:", min(scores, key=lambda s: s.score))


# In[4]:

same = [s.score for s in scores if labels[s.a] == labels[s.b]]
cross = [s.score for s in scores if labels[s.a] != labels[s.b]]
print(f"within topic: min {np.min(same):.3f}   across topics: max {np.max(cross):.3f}")


# Raising the threshold can only split groups, never merge them.

# In[5]:

for t in (0.3, 0.6, 0.85, 0.95):
    groups = connected_components(build_graph(scores, vectors, t))
    sizes = [len(g.member_ids) for g in groups]
    print(f"threshold {t:.2f}: {len(groups):2d} groups, sizes {sizes[:6]}")


# In[6]:

groups = connected_components(build_graph(scores, vectors, 0.85))
for g in groups:
    print(g.id, len(g.member_ids), Counter(labels[m] for m in g.member_ids))
