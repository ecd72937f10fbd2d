#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "drs/counter.hpp"
#include "drs/types.hpp"

namespace drs {

// Word vectors keyed by lowercased token, all of one dimension.
class EmbeddingTable {
 public:
  int dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }

  void insert(const std::string& token, std::vector<double> vector);
  const std::vector<double>* find(const std::string& token) const;

  // File format: one token per line followed by dimension-many decimal
  // numbers, single-space separated (GloVe text format).
  static EmbeddingTable load(std::istream& in);
  static EmbeddingTable load_file(const std::string& path);

 private:
  std::unordered_map<std::string, std::vector<double>> vectors_;
  int dimension_ = 0;
};

// Mean vector of the in-vocabulary tokens; the zero vector when none are.
std::vector<double> embed_sentence(const std::vector<std::string>& tokens,
                                   const EmbeddingTable& table);

// Cosine similarity, with -1 when either vector is zero (or empty).
double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

// Lowercases, splits on whitespace, strips leading/trailing ASCII punctuation.
std::vector<std::string> sentence_tokens(const std::string& sentence);

// The training DRS with the highest mean pairwise f1 against the training
// set (ties: lowest index). When sample is given the mean is estimated
// against a seeded random sample of the training set.
ClausalForm spar_select(const std::vector<ClausalForm>& training, const MatchConfig& config = {},
                        std::optional<int> sample = std::nullopt);

// n copies of the default DRS with fresh sequential doc ids.
std::vector<ClausalForm> spar_predict(int n, const ClausalForm& default_form);

// For each input sentence, the DRS of the most cosine-similar training
// sentence (zero-embedding sides count as similarity -1; ties: lowest index).
std::vector<ClausalForm> sim_spar_predict(
    const std::vector<std::string>& inputs,
    const std::vector<std::pair<std::string, ClausalForm>>& training,
    const EmbeddingTable& table);

}  // namespace drs
