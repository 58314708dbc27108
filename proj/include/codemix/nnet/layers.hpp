// Copyright 2026 The codemix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "codemix/nnet/matrix.hpp"

namespace codemix::nnet {

double sigmoid(double x);
Vector softmax(std::span<const double> logits);

enum class Activation { kNone, kSigmoid, kSoftmax };

struct DenseParams {
  Matrix weight;  // out x in
  Vector bias;    // out

  static DenseParams zeros(std::size_t in, std::size_t out);
  std::size_t input_dim() const { return weight.cols(); }
  std::size_t output_dim() const { return weight.rows(); }
  void collect(ParamRefs& refs);
  bool operator==(const DenseParams&) const = default;
};

// activation(W x + b). Throws std::invalid_argument on shape mismatch.
Vector dense_forward(const Matrix& weight, std::span<const double> bias, std::span<const double> x,
                     Activation activation);

enum Gate : std::size_t { kInputGate = 0, kForgetGate = 1, kOutputGate = 2, kCellGate = 3 };
inline constexpr std::size_t kNumGates = 4;

// One LSTM layer:
//   i,f,o = sigmoid(W x + U h + b), g = tanh(W x + U h + b)
//   c' = f*c + i*g,  h' = o*tanh(c')
struct LstmLayerParams {
  std::size_t input_dim = 0;
  std::size_t hidden_dim = 0;
  std::array<Matrix, kNumGates> w;  // hidden x input
  std::array<Matrix, kNumGates> u;  // hidden x hidden
  std::array<Vector, kNumGates> b;  // hidden

  static LstmLayerParams zeros(std::size_t input_dim, std::size_t hidden_dim);
  void collect(ParamRefs& refs);
  bool operator==(const LstmLayerParams&) const = default;
};

struct LstmState {
  Vector h;
  Vector c;

  static LstmState zeros(std::size_t hidden_dim) { return {Vector(hidden_dim), Vector(hidden_dim)}; }
};

// Activations kept from the forward pass for backpropagation.
struct LstmStepTrace {
  Vector x, h_prev, c_prev;
  Vector i, f, o, g, c, tanh_c;
};

struct LstmOutput {
  std::vector<Vector> hidden;  // one per input step
  LstmState final_state;
};

struct LstmGradients {
  std::vector<Vector> d_inputs;
  LstmState d_initial;
};

// Single step; fills trace when non-null.
LstmState lstm_step(const LstmLayerParams& params, std::span<const double> x, const LstmState& prev,
                    LstmStepTrace* trace = nullptr);

// Throws std::invalid_argument on shape mismatch.
LstmOutput lstm_forward(const LstmLayerParams& params, std::span<const Vector> inputs,
                        const LstmState& initial, std::vector<LstmStepTrace>* trace = nullptr);

// Backpropagation through time. d_hidden[t] is dLoss/dh_t from layers above,
// d_final the gradient flowing into the final state. Parameter gradients are
// accumulated into grads.
LstmGradients lstm_backward(const LstmLayerParams& params, std::span<const LstmStepTrace> trace,
                            std::span<const Vector> d_hidden, const LstmState& d_final,
                            LstmLayerParams& grads);

inline constexpr double kLossEpsilon = 1e-12;

// Binary cross-entropy with the prediction clamped to [eps, 1-eps].
double bce_loss(double pred, double target);

// -ln pred[target] with clamping. Throws std::out_of_range for a bad index.
double cce_loss(std::span<const double> pred, std::size_t target);

}  // namespace codemix::nnet
