//
// Copyright 2026 The spamadv Authors
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
//

#include "spamadv/models.h"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "spamadv/error.h"
#include "spamadv/rng.h"

namespace spamadv {
namespace {

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// -log p(y | logit), computed without overflow.
double log_loss(double logit, Label y) {
  const double softplus =
      std::max(logit, 0.0) + std::log1p(std::exp(-std::abs(logit)));
  return softplus - (y == Label::kSpam ? logit : 0.0);
}

double target(Label y) { return y == Label::kSpam ? 1.0 : 0.0; }

void require_both_labels(const std::vector<CleanDoc>& train, const char* who) {
  bool spam = false;
  bool ham = false;
  for (const CleanDoc& d : train) {
    (d.label == Label::kSpam ? spam : ham) = true;
  }
  if (!spam || !ham) {
    throw TrainingError(std::string(who) +
                        ": training set must contain both spam and ham");
  }
}

}  // namespace

EncodedSet encode_all(const std::vector<CleanDoc>& docs,
                      const Vocabulary& vocab) {
  EncodedSet set;
  set.seqs.reserve(docs.size());
  set.labels.reserve(docs.size());
  for (const CleanDoc& d : docs) {
    set.seqs.push_back(encode(d, vocab));
    set.labels.push_back(d.label);
  }
  return set;
}

Label classify(double score, double threshold) {
  return score >= threshold ? Label::kSpam : Label::kHam;
}

// ---------------------------------------------------------------------------
// Naive Bayes

NaiveBayesModel::NaiveBayesModel(std::shared_ptr<const Vocabulary> vocab,
                                 double alpha, std::array<double, 2> log_prior,
                                 std::array<std::vector<double>, 2> log_likelihood)
    : vocab_(std::move(vocab)),
      alpha_(alpha),
      log_prior_(log_prior),
      log_likelihood_(std::move(log_likelihood)) {}

double NaiveBayesModel::spam_probability(const TokenSeq& seq) const {
  double logit = log_prior_[1] - log_prior_[0];
  for (std::size_t i = 0; i < seq.true_len; ++i) {
    const auto id = static_cast<std::size_t>(seq.ids[i]);
    logit += log_likelihood_[1][id] - log_likelihood_[0][id];
  }
  return sigmoid(logit);
}

double NaiveBayesModel::spam_probability(
    const std::vector<std::string>& tokens) const {
  return spam_probability(encode(tokens, *vocab_));
}

NaiveBayesModel train_naive_bayes(const std::vector<CleanDoc>& train,
                                  std::shared_ptr<const Vocabulary> vocab,
                                  double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("naive Bayes alpha must be > 0");
  if (train.empty()) throw TrainingError("naive_bayes: empty training set");
  require_both_labels(train, "naive_bayes");

  const std::size_t v = vocab->size();
  std::array<std::vector<double>, 2> counts{std::vector<double>(v, 0.0),
                                            std::vector<double>(v, 0.0)};
  std::array<double, 2> totals{0.0, 0.0};
  std::array<double, 2> docs{0.0, 0.0};
  for (const CleanDoc& d : train) {
    const int c = static_cast<int>(d.label);
    docs[c] += 1.0;
    const TokenSeq seq = encode(d, *vocab);
    for (std::size_t i = 0; i < seq.true_len; ++i) {
      counts[c][static_cast<std::size_t>(seq.ids[i])] += 1.0;
      totals[c] += 1.0;
    }
  }
  const double n = docs[0] + docs[1];
  // Features are ids 1 .. V-1.
  const double features = static_cast<double>(v - 1);
  std::array<double, 2> log_prior{std::log(docs[0] / n), std::log(docs[1] / n)};
  std::array<std::vector<double>, 2> ll{std::vector<double>(v, 0.0),
                                        std::vector<double>(v, 0.0)};
  for (int c = 0; c < 2; ++c) {
    const double denom = std::log(totals[c] + alpha * features);
    for (std::size_t id = 1; id < v; ++id) {
      ll[c][id] = std::log(counts[c][id] + alpha) - denom;
    }
  }
  return NaiveBayesModel(std::move(vocab), alpha, log_prior, std::move(ll));
}

// ---------------------------------------------------------------------------
// Logistic regression

LogisticModel::LogisticModel(std::shared_ptr<const Vocabulary> vocab,
                             LogisticHyper hyper)
    : vocab_(std::move(vocab)), hyper_(hyper), weights_(vocab_->size(), 0.0) {}

double LogisticModel::spam_probability(const TokenSeq& seq) const {
  double logit = bias_;
  for (std::size_t i = 0; i < seq.true_len; ++i) {
    logit += weights_[static_cast<std::size_t>(seq.ids[i])];
  }
  return sigmoid(logit);
}

double LogisticModel::spam_probability(
    const std::vector<std::string>& tokens) const {
  return spam_probability(encode(tokens, *vocab_));
}

double LogisticModel::objective(const EncodedSet& data,
                                std::vector<double>* grad_w,
                                double* grad_b) const {
  const double n = static_cast<double>(data.seqs.size());
  if (grad_w != nullptr) grad_w->assign(weights_.size(), 0.0);
  if (grad_b != nullptr) *grad_b = 0.0;
  double loss = 0.0;
  for (std::size_t k = 0; k < data.seqs.size(); ++k) {
    const TokenSeq& seq = data.seqs[k];
    double logit = bias_;
    for (std::size_t i = 0; i < seq.true_len; ++i) {
      logit += weights_[static_cast<std::size_t>(seq.ids[i])];
    }
    loss += log_loss(logit, data.labels[k]);
    const double delta = (sigmoid(logit) - target(data.labels[k])) / n;
    if (grad_w != nullptr) {
      for (std::size_t i = 0; i < seq.true_len; ++i) {
        (*grad_w)[static_cast<std::size_t>(seq.ids[i])] += delta;
      }
    }
    if (grad_b != nullptr) *grad_b += delta;
  }
  loss /= n;
  double sq = 0.0;
  for (double w : weights_) sq += w * w;
  loss += 0.5 * hyper_.l2 * sq;
  if (grad_w != nullptr) {
    for (std::size_t j = 0; j < weights_.size(); ++j) {
      (*grad_w)[j] += hyper_.l2 * weights_[j];
    }
  }
  return loss;
}

LogisticModel train_logistic(const std::vector<CleanDoc>& train,
                             std::shared_ptr<const Vocabulary> vocab,
                             const LogisticHyper& hyper) {
  if (train.empty()) throw TrainingError("logistic: empty training set");
  require_both_labels(train, "logistic");
  if (!(hyper.learning_rate > 0.0) || hyper.epochs < 0 || hyper.l2 < 0.0) {
    throw ValidationError("logistic: invalid hyperparameters");
  }
  LogisticModel model(vocab, hyper);
  const EncodedSet data = encode_all(train, *vocab);
  const double n = static_cast<double>(data.seqs.size());
  std::vector<double> grad(model.weights().size());
  const double shrink = 1.0 / (1.0 + hyper.learning_rate * hyper.l2);
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    double loss = 0.0;
    for (std::size_t k = 0; k < data.seqs.size(); ++k) {
      const TokenSeq& seq = data.seqs[k];
      double logit = model.bias();
      for (std::size_t i = 0; i < seq.true_len; ++i) {
        logit += model.weights()[static_cast<std::size_t>(seq.ids[i])];
      }
      loss += log_loss(logit, data.labels[k]);
      const double delta = (sigmoid(logit) - target(data.labels[k])) / n;
      for (std::size_t i = 0; i < seq.true_len; ++i) {
        grad[static_cast<std::size_t>(seq.ids[i])] += delta;
      }
      grad_b += delta;
    }
    if (!std::isfinite(loss)) {
      throw TrainingError("logistic: non-finite loss at epoch " +
                          std::to_string(epoch));
    }
    auto& w = model.weights();
    for (std::size_t j = 1; j < w.size(); ++j) {
      w[j] = (w[j] - hyper.learning_rate * grad[j]) * shrink;
    }
    model.bias() -= hyper.learning_rate * grad_b;
  }
  return model;
}

// ---------------------------------------------------------------------------
// Attention

struct AttentionModel::Forward {
  std::vector<double> tanh_z;  // true_len x d
  std::vector<double> align;   // true_len
  std::vector<double> weights;  // true_len
  std::vector<double> context;  // d
};

AttentionModel::AttentionModel(std::shared_ptr<const Vocabulary> vocab,
                               AttentionHyper hyper)
    : vocab_(std::move(vocab)), hyper_(hyper) {
  if (hyper_.dim < 1) throw ValidationError("attention: dim must be >= 1");
  params_.assign(output_b_offset() + 1, 0.0);
  DeterministicRng rng(hyper_.seed);
  for (double& p : params_) p = rng.uniform(-0.1, 0.1);
}

double AttentionModel::forward(const TokenSeq& seq, Forward* fwd) const {
  const std::size_t d = hyper_.dim;
  const std::size_t n = seq.true_len;
  const double* emb = params_.data() + embedding_offset();
  const double* w = params_.data() + attention_w_offset();
  const double* b = params_.data() + attention_b_offset();
  const double* v = params_.data() + attention_v_offset();
  const double* u = params_.data() + output_u_offset();
  const double b_out = params_[output_b_offset()];

  std::vector<double> tanh_z(n * d);
  std::vector<double> align(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* h = emb + static_cast<std::size_t>(seq.ids[i]) * d;
    double e = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      double z = b[r];
      for (std::size_t c = 0; c < d; ++c) z += w[r * d + c] * h[c];
      const double t = std::tanh(z);
      tanh_z[i * d + r] = t;
      e += v[r] * t;
    }
    align[i] = e;
  }
  std::vector<double> weights(n);
  if (n > 0) {
    double max_e = align[0];
    for (double e : align) max_e = std::max(max_e, e);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      weights[i] = std::exp(align[i] - max_e);
      sum += weights[i];
    }
    for (double& a : weights) a /= sum;
  }
  std::vector<double> context(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* h = emb + static_cast<std::size_t>(seq.ids[i]) * d;
    for (std::size_t c = 0; c < d; ++c) context[c] += weights[i] * h[c];
  }
  double logit = b_out;
  for (std::size_t c = 0; c < d; ++c) logit += u[c] * context[c];
  if (fwd != nullptr) {
    fwd->tanh_z = std::move(tanh_z);
    fwd->align = std::move(align);
    fwd->weights = std::move(weights);
    fwd->context = std::move(context);
  }
  return logit;
}

double AttentionModel::spam_probability(const TokenSeq& seq) const {
  return sigmoid(forward(seq, nullptr));
}

double AttentionModel::spam_probability(
    const std::vector<std::string>& tokens) const {
  return spam_probability(encode(tokens, *vocab_));
}

AttentionReadout AttentionModel::readout(const TokenSeq& seq) const {
  if (seq.true_len == 0) {
    throw ValidationError("attention readout needs at least one token");
  }
  Forward fwd;
  forward(seq, &fwd);
  AttentionReadout out;
  out.true_len = seq.true_len;
  out.weights.assign(seq.ids.size(), 0.0);
  std::copy(fwd.weights.begin(), fwd.weights.end(), out.weights.begin());
  out.alignment = std::move(fwd.align);
  return out;
}

AttentionReadout AttentionModel::readout(const CleanDoc& doc) const {
  return readout(encode(doc, *vocab_));
}

double AttentionModel::loss_and_gradient(const EncodedSet& data,
                                         std::vector<double>* grad) const {
  const std::size_t d = hyper_.dim;
  const double n_docs = static_cast<double>(data.seqs.size());
  if (grad != nullptr) grad->assign(params_.size(), 0.0);
  const double* emb = params_.data() + embedding_offset();
  const double* w = params_.data() + attention_w_offset();
  const double* v = params_.data() + attention_v_offset();
  const double* u = params_.data() + output_u_offset();

  double loss = 0.0;
  std::vector<double> dctx(d);
  std::vector<double> dweights;
  std::vector<double> dz(d);
  for (std::size_t k = 0; k < data.seqs.size(); ++k) {
    const TokenSeq& seq = data.seqs[k];
    Forward fwd;
    const double logit = forward(seq, &fwd);
    loss += log_loss(logit, data.labels[k]);
    if (grad == nullptr) continue;

    double* g = grad->data();
    const std::size_t n = seq.true_len;
    const double ds = (sigmoid(logit) - target(data.labels[k])) / n_docs;
    for (std::size_t c = 0; c < d; ++c) {
      g[output_u_offset() + c] += ds * fwd.context[c];
      dctx[c] = ds * u[c];
    }
    g[output_b_offset()] += ds;
    if (n == 0) continue;

    // dL/da_i = dctx . h_i; softmax backward gives dL/de_i.
    dweights.assign(n, 0.0);
    double weighted = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double* h = emb + static_cast<std::size_t>(seq.ids[i]) * d;
      double da = 0.0;
      for (std::size_t c = 0; c < d; ++c) da += dctx[c] * h[c];
      dweights[i] = da;
      weighted += fwd.weights[i] * da;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t id = static_cast<std::size_t>(seq.ids[i]);
      const double* h = emb + id * d;
      double* gh = g + embedding_offset() + id * d;
      const double a = fwd.weights[i];
      const double de = a * (dweights[i] - weighted);
      const double* t = fwd.tanh_z.data() + i * d;
      for (std::size_t r = 0; r < d; ++r) {
        g[attention_v_offset() + r] += de * t[r];
        dz[r] = de * v[r] * (1.0 - t[r] * t[r]);
        g[attention_b_offset() + r] += dz[r];
      }
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
          g[attention_w_offset() + r * d + c] += dz[r] * h[c];
        }
      }
      // Context path plus attention-score path into the embedding row.
      for (std::size_t c = 0; c < d; ++c) {
        double acc = a * dctx[c];
        for (std::size_t r = 0; r < d; ++r) acc += w[r * d + c] * dz[r];
        gh[c] += acc;
      }
    }
  }
  return loss / n_docs;
}

AttentionModel train_attention(const std::vector<CleanDoc>& train,
                               std::shared_ptr<const Vocabulary> vocab,
                               const AttentionHyper& hyper) {
  if (train.empty()) throw TrainingError("attention: empty training set");
  require_both_labels(train, "attention");
  if (!(hyper.learning_rate > 0.0) || hyper.epochs < 0) {
    throw ValidationError("attention: invalid hyperparameters");
  }
  AttentionModel model(vocab, hyper);
  const EncodedSet data = encode_all(train, *vocab);
  std::vector<double> grad;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    const double loss = model.loss_and_gradient(data, &grad);
    if (!std::isfinite(loss)) {
      throw TrainingError("attention: non-finite loss at epoch " +
                          std::to_string(epoch));
    }
    auto params = model.parameters();
    for (std::size_t j = 0; j < params.size(); ++j) {
      params[j] -= hyper.learning_rate * grad[j];
    }
  }
  return model;
}

// ---------------------------------------------------------------------------

namespace {

void dump_block(std::ostringstream& out, const std::string& name,
                std::span<const double> values) {
  out << name << ' ' << values.size() << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << values[i] << (i + 1 == values.size() ? '\n' : ' ');
  }
}

}  // namespace

std::string dump_parameters(const Classifier& model) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "model " << model.name() << '\n';
  if (const auto* nb = dynamic_cast<const NaiveBayesModel*>(&model)) {
    out << "alpha " << nb->alpha() << '\n';
    const std::array<double, 2> prior{nb->log_prior(Label::kHam),
                                      nb->log_prior(Label::kSpam)};
    dump_block(out, "log_prior[ham,spam]", prior);
    dump_block(out, "log_likelihood[ham]", nb->log_likelihood(Label::kHam));
    dump_block(out, "log_likelihood[spam]", nb->log_likelihood(Label::kSpam));
  } else if (const auto* lr = dynamic_cast<const LogisticModel*>(&model)) {
    dump_block(out, "weights", lr->weights());
    out << "bias " << lr->bias() << '\n';
  } else if (const auto* at = dynamic_cast<const AttentionModel*>(&model)) {
    const auto p = at->parameters();
    const std::size_t d = at->dim();
    out << "dim " << d << '\n';
    dump_block(out, "embedding", p.subspan(at->embedding_offset(),
                                           at->attention_w_offset()));
    dump_block(out, "attention_w", p.subspan(at->attention_w_offset(), d * d));
    dump_block(out, "attention_b", p.subspan(at->attention_b_offset(), d));
    dump_block(out, "attention_v", p.subspan(at->attention_v_offset(), d));
    dump_block(out, "output_u", p.subspan(at->output_u_offset(), d));
    dump_block(out, "output_b", p.subspan(at->output_b_offset(), 1));
  }
  return out.str();
}

}  // namespace spamadv
