# coding: utf-8

# # Training word vectors
#
# A small word2vec with negative sampling. The bundled synthetic corpus has pets
# and hardware in separate contexts, so after a few epochs the pet words sit
# closer to each other than to the hardware words.

# In[1]:

import tempfile
from pathlib import Path

import numpy as np

from pulsetags.datasets import load_sentences
from pulsetags.embedding import TrainingConfig, comment_vector, load_word2vec_text, save_word2vec_text, train


# In[2]:

sentences = load_sentences()
print(len(sentences), "sentences, first:", sentences[0])


# `deterministic=True` runs one sequential worker, so the same seed gives the
# same vectors bit for bit. Without it the kernel runs Hogwild style across threads.

# In[3]:

config = TrainingConfig(mode="skipgram", dim=50, window=5, negative=5, epochs=5, seed=42)
model = train(sentences, config, deterministic=True)
print("vocabulary:", len(model), "dim:", model.dim)
print("loss per epoch:", np.round(model.loss_history, 4))


# The two topics share most of their filler words, so every vector carries a large
# common component and raw cosines are all close to 1. The ordering is still right;
# subtracting the mean vector makes the gap easier to see.

# In[4]:

centered = model.vectors - model.vectors.mean(axis=0)
row = {w: i for i, w in enumerate(model.words)}

def centered_cos(a, b):
    u, v = centered[row[a]], centered[row[b]]
    return u @ v / np.linalg.norm(u) / np.linalg.norm(v)

for a, b in [("cat", "dog"), ("cat", "bolt"), ("bolt", "nut"), ("nut", "dog")]:
    print(f"cos({a}, {b}) = {model.similarity(a, b):.4f}   centered {centered_cos(a, b):.3f}")


# A comment vector is the mean of its in-vocabulary token vectors.

# In[5]:

v = comment_vector(model, ["cat", "dog", "unknownword"])
print(v[:5])
print(comment_vector(model, ["unknownword"]))  # nothing in vocabulary


# Vectors are saved in the plain word2vec text format.

# In[6]:

path = Path(tempfile.mkdtemp()) / "pets.vec"
save_word2vec_text(model, path)
back = load_word2vec_text(path)
print(path.read_text().splitlines()[0], "| max abs diff:", np.max(np.abs(back.vectors - model.vectors)))
