import string

PUNCT = set(string.punctuation)


def words(text):
    return [w.strip(string.punctuation).lower() for w in text.split() if w.strip(string.punctuation)]


def ngrams(seq, n=2):
    return [tuple(seq[i:i + n]) for i in range(len(seq) - n + 1)]


def char_counts(text):
    counts = {}
    for ch in text:
        if ch in PUNCT or ch.isspace():
            continue
        counts[ch] = counts.get(ch, 0) + 1
    return counts


def top_words(text, k=10):
    freq = {}
    for w in words(text):
        freq[w] = freq.get(w, 0) + 1
    ranked = sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:k]


def sentences(text):
    parts = []
    start = 0
    for i, ch in enumerate(text):
        if ch in ".!?" and (i + 1 == len(text) or text[i + 1].isspace()):
            parts.append(text[start:i + 1].strip())
            start = i + 1
    tail = text[start:].strip()
    if tail:
        parts.append(tail)
    return parts
