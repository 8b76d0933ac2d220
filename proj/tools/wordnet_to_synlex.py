#!/usr/bin/env python3
#
# Copyright 2026 The synaug Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""Converts WordNet database files (data.noun, data.verb, ...) to synlex TSV.

Every pair of distinct lemmas sharing a synset becomes a record
`word<TAB>pos<TAB>synonym`, in both directions. Lemmas that the synaug
tokenizer cannot produce as one token (multi-word, digits, punctuation
other than an inner apostrophe) are skipped.

    python3 tools/wordnet_to_synlex.py --wordnet-dir path/to/dict \
        --output data/wordnet-synlex.tsv
"""

import argparse
import pathlib
import re
import sys

POS_FILES = {
    "noun": "data.noun",
    "verb": "data.verb",
    "adjective": "data.adj",
    "adverb": "data.adv",
}

SINGLE_TOKEN = re.compile(r"^[a-z]+(?:'[a-z]+)*$")
# Syntactic markers on adjective lemmas: (a), (p), (ip).
ADJ_MARKER = re.compile(r"\((?:a|p|ip)\)$")


def synsets(path):
    """Yields the lemma list of each synset in a WNDB data file."""
    with open(path, encoding="latin-1") as f:
        for line in f:
            if line.startswith("  "):  # license preamble
                continue
            fields = line.split(" ")
            count = int(fields[3], 16)
            yield [fields[4 + 2 * i] for i in range(count)]


def normalize(lemma):
    return ADJ_MARKER.sub("", lemma).lower()


def convert(wordnet_dir, out):
    records = set()
    skipped = 0
    for pos, name in POS_FILES.items():
        for lemmas in synsets(wordnet_dir / name):
            words = []
            for lemma in lemmas:
                word = normalize(lemma)
                if SINGLE_TOKEN.match(word):
                    if word not in words:
                        words.append(word)
                else:
                    skipped += 1
            for word in words:
                for synonym in words:
                    if synonym != word:
                        records.add((word, pos, synonym))
    out.write("#synlex v1\n")
    out.write("# Derived from WordNet 3.0 (Princeton University); see "
              "WORDNET_LICENSE.\n")
    for word, pos, synonym in sorted(records):
        out.write(f"{word}\t{pos}\t{synonym}\n")
    return len(records), skipped


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--wordnet-dir", type=pathlib.Path, required=True,
                        help="directory holding data.noun, data.verb, ...")
    parser.add_argument("--output", type=pathlib.Path, required=True)
    args = parser.parse_args(argv)
    with open(args.output, "w", encoding="utf-8", newline="\n") as out:
        records, skipped = convert(args.wordnet_dir, out)
    print(f"{records} records, {skipped} lemmas skipped", file=sys.stderr)


if __name__ == "__main__":
    main()
