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

#ifndef SPAMADV_MODELS_H_
#define SPAMADV_MODELS_H_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "spamadv/corpus.h"

namespace spamadv {

// Anything that maps a cleaned token list to a spam probability in [0, 1].
// Implementations must be safe to call concurrently.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual std::string name() const = 0;
  virtual double spam_probability(
      const std::vector<std::string>& tokens) const = 0;
};

// Labeled training set in encoded form.
struct EncodedSet {
  std::vector<TokenSeq> seqs;
  std::vector<Label> labels;
};
EncodedSet encode_all(const std::vector<CleanDoc>& docs,
                      const Vocabulary& vocab);

// Multinomial naive Bayes over token counts. The unknown id is an ordinary
// feature (its counts come from out-of-vocabulary training tokens); the pad
// id is never a feature.
class NaiveBayesModel final : public Classifier {
 public:
  NaiveBayesModel(std::shared_ptr<const Vocabulary> vocab, double alpha,
                  std::array<double, 2> log_prior,
                  std::array<std::vector<double>, 2> log_likelihood);

  std::string name() const override { return "naive_bayes"; }
  double spam_probability(const std::vector<std::string>& tokens) const override;
  double spam_probability(const TokenSeq& seq) const;

  const Vocabulary& vocab() const { return *vocab_; }
  double alpha() const { return alpha_; }
  double log_prior(Label c) const { return log_prior_[static_cast<int>(c)]; }
  // Indexed by vocabulary id; entry 0 (pad) is unused.
  const std::vector<double>& log_likelihood(Label c) const {
    return log_likelihood_[static_cast<int>(c)];
  }

 private:
  std::shared_ptr<const Vocabulary> vocab_;
  double alpha_;
  std::array<double, 2> log_prior_;
  std::array<std::vector<double>, 2> log_likelihood_;
};

NaiveBayesModel train_naive_bayes(const std::vector<CleanDoc>& train,
                                  std::shared_ptr<const Vocabulary> vocab,
                                  double alpha = 1.0);

struct LogisticHyper {
  double learning_rate = 0.5;
  int epochs = 200;
  double l2 = 1e-4;
  std::uint64_t seed = 0;  // recorded only; initialization is all-zero

  bool operator==(const LogisticHyper&) const = default;
};

// Bag-of-words logistic regression. weights()[id] multiplies the count of
// id in the sequence; weights()[0] stays 0.
class LogisticModel final : public Classifier {
 public:
  LogisticModel(std::shared_ptr<const Vocabulary> vocab, LogisticHyper hyper);

  std::string name() const override { return "logistic"; }
  double spam_probability(const std::vector<std::string>& tokens) const override;
  double spam_probability(const TokenSeq& seq) const;

  // Mean log-loss plus (l2 / 2) * |w|^2. Fills `grad_w` / `grad_b` when non-null.
  double objective(const EncodedSet& data, std::vector<double>* grad_w,
                   double* grad_b) const;

  const Vocabulary& vocab() const { return *vocab_; }
  const LogisticHyper& hyper() const { return hyper_; }
  std::vector<double>& weights() { return weights_; }
  const std::vector<double>& weights() const { return weights_; }
  double& bias() { return bias_; }
  double bias() const { return bias_; }

 private:
  std::shared_ptr<const Vocabulary> vocab_;
  LogisticHyper hyper_;
  std::vector<double> weights_;
  double bias_ = 0.0;
};

// Full-batch proximal gradient descent: a gradient step on the mean log-loss
// followed by the closed-form L2 shrink w /= (1 + lr * l2). Throws
// TrainingError if the loss becomes non-finite.
LogisticModel train_logistic(const std::vector<CleanDoc>& train,
                             std::shared_ptr<const Vocabulary> vocab,
                             const LogisticHyper& hyper);

struct AttentionHyper {
  std::size_t dim = 16;
  double learning_rate = 3.0;
  int epochs = 200;
  std::uint64_t seed = 1;

  bool operator==(const AttentionHyper&) const = default;
};

struct AttentionReadout {
  // Length max_len; entries at positions >= true_len are exactly 0.
  std::vector<double> weights;
  // Pre-softmax alignment scores for the first true_len positions.
  std::vector<double> alignment;
  std::size_t true_len = 0;
};

// Single attention pooling layer over token embeddings:
//   h_i = E[x_i],  e_i = v . tanh(W h_i + b),  a = softmax(e) over non-pad,
//   c = sum_i a_i h_i,  p = sigmoid(u . c + b_out).
// All parameters live in one flat buffer (see the offset accessors) so that
// training and finite-difference checks can treat them uniformly.
class AttentionModel final : public Classifier {
 public:
  AttentionModel(std::shared_ptr<const Vocabulary> vocab, AttentionHyper hyper);

  std::string name() const override { return "attention"; }
  double spam_probability(const std::vector<std::string>& tokens) const override;
  double spam_probability(const TokenSeq& seq) const;

  // Throws ValidationError for a sequence without tokens.
  AttentionReadout readout(const TokenSeq& seq) const;
  AttentionReadout readout(const CleanDoc& doc) const;

  // Mean log-loss over `data`. `grad` (resized to parameter count) receives
  // the analytic gradient when non-null.
  double loss_and_gradient(const EncodedSet& data,
                           std::vector<double>* grad) const;

  std::span<double> parameters() { return params_; }
  std::span<const double> parameters() const { return params_; }

  std::size_t dim() const { return hyper_.dim; }
  const AttentionHyper& hyper() const { return hyper_; }
  const Vocabulary& vocab() const { return *vocab_; }

  std::size_t embedding_offset() const { return 0; }
  std::size_t attention_w_offset() const { return vocab_->size() * hyper_.dim; }
  std::size_t attention_b_offset() const {
    return attention_w_offset() + hyper_.dim * hyper_.dim;
  }
  std::size_t attention_v_offset() const { return attention_b_offset() + hyper_.dim; }
  std::size_t output_u_offset() const { return attention_v_offset() + hyper_.dim; }
  std::size_t output_b_offset() const { return output_u_offset() + hyper_.dim; }

 private:
  struct Forward;
  // Returns the logit; fills `fwd` when non-null.
  double forward(const TokenSeq& seq, Forward* fwd) const;

  std::shared_ptr<const Vocabulary> vocab_;
  AttentionHyper hyper_;
  std::vector<double> params_;
};

// Parameters start uniform in [-0.1, 0.1] from hyper.seed; full-batch
// gradient descent on the mean log-loss.
AttentionModel train_attention(const std::vector<CleanDoc>& train,
                               std::shared_ptr<const Vocabulary> vocab,
                               const AttentionHyper& hyper);

// spam iff score >= threshold.
Label classify(double score, double threshold = 0.5);

// Writes a plain-text parameter dump (one named block per tensor).
std::string dump_parameters(const Classifier& model);

}  // namespace spamadv

#endif  // SPAMADV_MODELS_H_
