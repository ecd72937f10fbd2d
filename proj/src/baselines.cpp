#include "drs/baselines.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>

namespace drs {

namespace {

std::string lowercased(const std::string& text) {
  std::string out = text;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool ascii_punct(unsigned char c) { return std::ispunct(c); }

}  // namespace

void EmbeddingTable::insert(const std::string& token, std::vector<double> vector) {
  if (vectors_.empty()) {
    dimension_ = static_cast<int>(vector.size());
  } else if (static_cast<int>(vector.size()) != dimension_) {
    throw DrsError(ErrorCode::BadFile,
                   "embedding for '" + token + "' has dimension " +
                       std::to_string(vector.size()) + ", expected " +
                       std::to_string(dimension_));
  }
  vectors_.emplace(lowercased(token), std::move(vector));  // first entry wins
}

const std::vector<double>* EmbeddingTable::find(const std::string& token) const {
  auto it = vectors_.find(lowercased(token));
  return it == vectors_.end() ? nullptr : &it->second;
}

EmbeddingTable EmbeddingTable::load(std::istream& in) {
  EmbeddingTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string token;
    fields >> token;
    std::vector<double> vector;
    double value;
    while (fields >> value) vector.push_back(value);
    if (token.empty() || vector.empty())
      throw DrsError(ErrorCode::BadFile, "embedding line " + std::to_string(line_no) +
                                             ": expected token and numbers");
    table.insert(token, std::move(vector));
  }
  return table;
}

EmbeddingTable EmbeddingTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DrsError(ErrorCode::BadFile, "cannot open " + path);
  return load(in);
}

std::vector<double> embed_sentence(const std::vector<std::string>& tokens,
                                   const EmbeddingTable& table) {
  std::vector<double> sum(table.dimension(), 0.0);
  int hits = 0;
  for (const std::string& token : tokens) {
    const std::vector<double>* v = table.find(token);
    if (v == nullptr) continue;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*v)[i];
    ++hits;
  }
  if (hits > 0) {
    for (double& x : sum) x /= hits;
  }
  return sum;
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return -1.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<std::string> sentence_tokens(const std::string& sentence) {
  std::vector<std::string> tokens;
  std::istringstream in(lowercased(sentence));
  std::string word;
  while (in >> word) {
    std::size_t begin = 0, end = word.size();
    while (begin < end && ascii_punct(static_cast<unsigned char>(word[begin]))) ++begin;
    while (end > begin && ascii_punct(static_cast<unsigned char>(word[end - 1]))) --end;
    if (end > begin) tokens.push_back(word.substr(begin, end - begin));
  }
  return tokens;
}

ClausalForm spar_select(const std::vector<ClausalForm>& training, const MatchConfig& config,
                        std::optional<int> sample) {
  if (training.empty())
    throw DrsError(ErrorCode::EmptyTraining, "SPAR needs a non-empty training set");

  // References the means are computed against: the whole set, or a seeded
  // sample of it.
  std::vector<int> refs(training.size());
  for (std::size_t i = 0; i < refs.size(); ++i) refs[i] = static_cast<int>(i);
  if (sample && *sample < static_cast<int>(training.size())) {
    if (*sample < 1)
      throw DrsError(ErrorCode::InvalidConfig, "sample must be at least 1");
    std::mt19937_64 engine(config.seed);
    for (std::size_t i = 0; i + 1 < refs.size() && i < static_cast<std::size_t>(*sample); ++i) {
      std::size_t j = i + engine() % (refs.size() - i);
      std::swap(refs[i], refs[j]);
    }
    refs.resize(*sample);
  }

  int best = 0;
  double best_mean = -1.0;
  for (std::size_t i = 0; i < training.size(); ++i) {
    double total = 0.0;
    for (int j : refs)
      total += match_score(training[i], training[j], config).f1;
    double mean = total / refs.size();
    if (mean > best_mean) {
      best_mean = mean;
      best = static_cast<int>(i);
    }
  }
  return training[best];
}

std::vector<ClausalForm> spar_predict(int n, const ClausalForm& default_form) {
  std::vector<ClausalForm> out;
  out.reserve(std::max(n, 0));
  for (int i = 0; i < n; ++i) {
    ClausalForm copy = default_form;
    copy.doc_id = std::to_string(i);
    out.push_back(std::move(copy));
  }
  return out;
}

std::vector<ClausalForm> sim_spar_predict(
    const std::vector<std::string>& inputs,
    const std::vector<std::pair<std::string, ClausalForm>>& training,
    const EmbeddingTable& table) {
  if (training.empty())
    throw DrsError(ErrorCode::EmptyTraining, "SIM-SPAR needs a non-empty training set");

  std::vector<std::vector<double>> candidates;
  candidates.reserve(training.size());
  for (const auto& [sentence, form] : training)
    candidates.push_back(embed_sentence(sentence_tokens(sentence), table));

  std::vector<ClausalForm> out;
  out.reserve(inputs.size());
  for (std::size_t d = 0; d < inputs.size(); ++d) {
    std::vector<double> query = embed_sentence(sentence_tokens(inputs[d]), table);
    int best = 0;
    double best_sim = cosine_similarity(query, candidates[0]);
    for (std::size_t j = 1; j < candidates.size(); ++j) {
      double sim = cosine_similarity(query, candidates[j]);
      if (sim > best_sim) {
        best_sim = sim;
        best = static_cast<int>(j);
      }
    }
    ClausalForm prediction = training[best].second;
    prediction.doc_id = std::to_string(d);
    prediction.raw_text = inputs[d];
    out.push_back(std::move(prediction));
  }
  return out;
}

}  // namespace drs
