# coding: utf-8

# # Reading comments and preprocessing text
#
# Every comment goes through the same normalization before anything else sees it:
# lowercase, drop digits, turn punctuation into spaces (hyphens and apostrophes
# inside words survive), split on whitespace and remove stopwords.

# In[1]:

import json
import tempfile
from pathlib import Path

from pulsetags.corpus import ingest, preprocess, stopwords


# In[2]:

print(preprocess("My manager's feedback was GREAT -- really timely!"))
print(preprocess("Work-life balance in 2024: not so good..."))
print(preprocess("The the THE"))  # only stopwords, so nothing is left


# The stopword list ships with the package. Point `PULSE_STOPWORDS` at another
# file (one word per line) to replace it.

# In[3]:

print(len(stopwords()), "stopwords, e.g.", sorted(stopwords())[:8])


# Comments come from CSV (header `id,text`) or JSON Lines (`{"id": ..., "text": ...}`).

# In[4]:

tmp = Path(tempfile.mkdtemp())
(tmp / "survey.csv").write_text(
    'id,text\n'
    'r1,"Great feedback from my manager, very timely"\n'
    'r2,The office is too noisy to focus\n'
    'r3,!!!\n',
    encoding="utf-8")
corpus = ingest(tmp / "survey.csv")
for c in corpus:
    print(c.id, c.tokens)
print("empty after preprocessing:", corpus.report.empty_ids)


# In[5]:

with open(tmp / "survey.jsonl", "w", encoding="utf-8") as fh:
    for c in corpus:
        fh.write(json.dumps({"id": c.id, "text": c.raw_text}) + "\n")
print(ingest(tmp / "survey.jsonl").comments == corpus.comments)
