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

#include "codemix/nnet/layers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace codemix::nnet {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("shape mismatch: ") + what);
}

}  // namespace

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Vector softmax(std::span<const double> logits) {
  Vector out(logits.begin(), logits.end());
  if (out.empty()) return out;
  const double peak = *std::max_element(out.begin(), out.end());
  double sum = 0.0;
  for (double& v : out) {
    v = std::exp(v - peak);
    sum += v;
  }
  for (double& v : out) v /= sum;
  return out;
}

DenseParams DenseParams::zeros(std::size_t in, std::size_t out) {
  return {Matrix(out, in), Vector(out)};
}

void DenseParams::collect(ParamRefs& refs) {
  refs.emplace_back(weight.values());
  refs.emplace_back(bias);
}

Vector dense_forward(const Matrix& weight, std::span<const double> bias, std::span<const double> x,
                     Activation activation) {
  require(weight.cols() == x.size(), "dense input");
  require(weight.rows() == bias.size(), "dense bias");
  Vector y(bias.begin(), bias.end());
  multiply_add(weight, x, y);
  switch (activation) {
    case Activation::kNone:
      break;
    case Activation::kSigmoid:
      for (double& v : y) v = sigmoid(v);
      break;
    case Activation::kSoftmax:
      y = softmax(y);
      break;
  }
  return y;
}

LstmLayerParams LstmLayerParams::zeros(std::size_t input_dim, std::size_t hidden_dim) {
  LstmLayerParams p;
  p.input_dim = input_dim;
  p.hidden_dim = hidden_dim;
  for (std::size_t k = 0; k < kNumGates; ++k) {
    p.w[k] = Matrix(hidden_dim, input_dim);
    p.u[k] = Matrix(hidden_dim, hidden_dim);
    p.b[k] = Vector(hidden_dim);
  }
  return p;
}

void LstmLayerParams::collect(ParamRefs& refs) {
  for (std::size_t k = 0; k < kNumGates; ++k) {
    refs.emplace_back(w[k].values());
    refs.emplace_back(u[k].values());
    refs.emplace_back(b[k]);
  }
}

LstmState lstm_step(const LstmLayerParams& params, std::span<const double> x, const LstmState& prev,
                    LstmStepTrace* trace) {
  const std::size_t hd = params.hidden_dim;
  std::array<Vector, kNumGates> pre;
  for (std::size_t k = 0; k < kNumGates; ++k) {
    pre[k] = params.b[k];
    multiply_add(params.w[k], x, pre[k]);
    multiply_add(params.u[k], prev.h, pre[k]);
  }
  LstmState next{Vector(hd), Vector(hd)};
  Vector tanh_c(hd);
  for (std::size_t j = 0; j < hd; ++j) {
    const double i = sigmoid(pre[kInputGate][j]);
    const double f = sigmoid(pre[kForgetGate][j]);
    const double o = sigmoid(pre[kOutputGate][j]);
    const double g = std::tanh(pre[kCellGate][j]);
    pre[kInputGate][j] = i;
    pre[kForgetGate][j] = f;
    pre[kOutputGate][j] = o;
    pre[kCellGate][j] = g;
    next.c[j] = f * prev.c[j] + i * g;
    tanh_c[j] = std::tanh(next.c[j]);
    next.h[j] = o * tanh_c[j];
  }
  if (trace != nullptr) {
    trace->x.assign(x.begin(), x.end());
    trace->h_prev = prev.h;
    trace->c_prev = prev.c;
    trace->i = std::move(pre[kInputGate]);
    trace->f = std::move(pre[kForgetGate]);
    trace->o = std::move(pre[kOutputGate]);
    trace->g = std::move(pre[kCellGate]);
    trace->c = next.c;
    trace->tanh_c = std::move(tanh_c);
  }
  return next;
}

LstmOutput lstm_forward(const LstmLayerParams& params, std::span<const Vector> inputs,
                        const LstmState& initial, std::vector<LstmStepTrace>* trace) {
  require(initial.h.size() == params.hidden_dim && initial.c.size() == params.hidden_dim,
          "lstm state");
  for (const auto& x : inputs) require(x.size() == params.input_dim, "lstm input");
  LstmOutput out;
  out.hidden.reserve(inputs.size());
  if (trace != nullptr) trace->assign(inputs.size(), {});
  LstmState state = initial;
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    state = lstm_step(params, inputs[t], state, trace != nullptr ? &(*trace)[t] : nullptr);
    out.hidden.push_back(state.h);
  }
  out.final_state = std::move(state);
  return out;
}

LstmGradients lstm_backward(const LstmLayerParams& params, std::span<const LstmStepTrace> trace,
                            std::span<const Vector> d_hidden, const LstmState& d_final,
                            LstmLayerParams& grads) {
  const std::size_t hd = params.hidden_dim;
  require(d_hidden.empty() || d_hidden.size() == trace.size(), "lstm d_hidden");
  LstmGradients out;
  out.d_inputs.assign(trace.size(), Vector(params.input_dim));
  Vector dh_next = d_final.h.empty() ? Vector(hd) : d_final.h;
  Vector dc_next = d_final.c.empty() ? Vector(hd) : d_final.c;
  std::array<Vector, kNumGates> da;
  for (auto& v : da) v.assign(hd, 0.0);

  for (std::size_t t = trace.size(); t-- > 0;) {
    const LstmStepTrace& s = trace[t];
    Vector dc_prev(hd);
    for (std::size_t j = 0; j < hd; ++j) {
      const double dh = dh_next[j] + (d_hidden.empty() ? 0.0 : d_hidden[t][j]);
      const double d_o = dh * s.tanh_c[j];
      const double dc = dc_next[j] + dh * s.o[j] * (1.0 - s.tanh_c[j] * s.tanh_c[j]);
      const double d_i = dc * s.g[j];
      const double d_g = dc * s.i[j];
      const double d_f = dc * s.c_prev[j];
      dc_prev[j] = dc * s.f[j];
      da[kInputGate][j] = d_i * s.i[j] * (1.0 - s.i[j]);
      da[kForgetGate][j] = d_f * s.f[j] * (1.0 - s.f[j]);
      da[kOutputGate][j] = d_o * s.o[j] * (1.0 - s.o[j]);
      da[kCellGate][j] = d_g * (1.0 - s.g[j] * s.g[j]);
    }
    Vector dh_prev(hd);
    for (std::size_t k = 0; k < kNumGates; ++k) {
      outer_add(grads.w[k], da[k], s.x);
      outer_add(grads.u[k], da[k], s.h_prev);
      for (std::size_t j = 0; j < hd; ++j) grads.b[k][j] += da[k][j];
      multiply_transpose_add(params.w[k], da[k], out.d_inputs[t]);
      multiply_transpose_add(params.u[k], da[k], dh_prev);
    }
    dh_next = std::move(dh_prev);
    dc_next = std::move(dc_prev);
  }
  out.d_initial = {std::move(dh_next), std::move(dc_next)};
  return out;
}

double bce_loss(double pred, double target) {
  const double p = std::clamp(pred, kLossEpsilon, 1.0 - kLossEpsilon);
  return -(target * std::log(p) + (1.0 - target) * std::log(1.0 - p));
}

double cce_loss(std::span<const double> pred, std::size_t target) {
  if (target >= pred.size()) throw std::out_of_range("cce_loss: target index out of range");
  return -std::log(std::clamp(pred[target], kLossEpsilon, 1.0));
}

}  // namespace codemix::nnet
