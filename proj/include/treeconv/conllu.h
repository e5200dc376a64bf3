// Copyright 2026 The Treeconv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TREECONV_CONLLU_H_
#define TREECONV_CONLLU_H_

// CoNLL-U object model plus a lossless reader and writer.
//
// Only basic-tree syntactic words become Tokens. Comments, multiword ranges
// ("3-4") and empty nodes ("5.1") are kept verbatim as NonSyntacticLines,
// anchored to the number of tokens that precede them, so that
// Serialize(Parse(x)) == x for every well-formed file.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace treeconv {

struct Token {
  int id = 0;
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;
  std::string feats;
  int head = 0;  // 0 attaches to the virtual root.
  std::string deprel;
  std::string deps;
  std::string misc;

  friend bool operator==(const Token&, const Token&) = default;
};

struct NonSyntacticLine {
  enum class Kind { kMultiwordRange, kEmptyNode, kComment };

  Kind kind = Kind::kComment;
  std::string raw;
  // Number of syntactic tokens emitted before this line.
  std::size_t anchor = 0;

  friend bool operator==(const NonSyntacticLine&,
                         const NonSyntacticLine&) = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::vector<NonSyntacticLine> extras;

  std::size_t size() const { return tokens.size(); }

  // Form of the head of `token`; callers must check token.head > 0.
  const std::string& HeadForm(const Token& token) const {
    return tokens[static_cast<std::size_t>(token.head - 1)].form;
  }

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Corpus {
  std::vector<Sentence> sentences;
  std::string source_path;

  std::size_t size() const { return sentences.size(); }
  std::size_t TokenCount() const;
  // Tokens with head > 0, i.e. the arcs a PairIndex counts.
  std::size_t ArcCount() const;
};

struct ParseOptions {
  // Strict mode rejects multi-root and cyclic sentences and stray blank
  // lines; lenient mode reports them as warnings.
  bool strict = true;
};

// Throws MalformedLine or CyclicTree. Warnings produced in lenient mode are
// appended to `warnings` when it is non-null.
Corpus ParseCorpus(std::string_view text, const ParseOptions& options = {},
                   std::vector<std::string>* warnings = nullptr);

Corpus ReadCorpusFile(const std::string& path, const ParseOptions& options = {},
                      std::vector<std::string>* warnings = nullptr);

std::string SerializeCorpus(const Corpus& corpus);
std::string SerializeSentence(const Sentence& sentence);
std::string SerializeToken(const Token& token);

// Returns an empty string when the heads of `sentence` form a single tree
// rooted at 0, otherwise a description of the violation.
std::string CheckTree(const Sentence& sentence);

// Reads a whole file into memory. Throws Error when it cannot be opened.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

bool IsValidUtf8(std::string_view text);

}  // namespace treeconv

#endif  // TREECONV_CONLLU_H_
