// Copyright 2026 the pirsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pir/alphabet.h"

#include <cmath>
#include <stdexcept>

#include "pir/composite.h"

namespace pir {

namespace {

BigInt pow_big(uint64_t base, uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1) {
      result *= b;
    }
    exp >>= 1;
    if (exp > 0) {
      b *= b;
    }
  }
  return result;
}

// Minimal x >= 1 with base^x >= target (target >= 2). Seeds the search with
// a float estimate, then corrects against exact powers.
uint64_t minimal_exponent(uint64_t base, const BigInt& target) {
  const double estimate =
      static_cast<double>(boost::multiprecision::msb(target)) /
      std::log2(static_cast<double>(base));
  uint64_t x = estimate > 4.0 ? static_cast<uint64_t>(estimate) - 3 : 1;
  BigInt power = pow_big(base, x);
  while (power < target) {
    power *= base;
    ++x;
  }
  while (x > 1) {
    const BigInt lower = power / base;
    if (lower >= target) {
      power = lower;
      --x;
    } else {
      break;
    }
  }
  return x;
}

void check_alphabets(uint64_t message_alphabet, uint64_t download_alphabet) {
  if (message_alphabet < 2 || download_alphabet < 2) {
    throw std::invalid_argument("transcode: alphabets must be at least 2");
  }
}

}  // namespace

uint64_t transcoded_length(uint64_t message_length, uint64_t message_alphabet,
                           uint64_t download_alphabet) {
  check_alphabets(message_alphabet, download_alphabet);
  if (message_length < 1) {
    throw std::invalid_argument("transcode: message length must be positive");
  }
  if (message_alphabet == download_alphabet) {
    return message_length;
  }
  return minimal_exponent(download_alphabet,
                          pow_big(message_alphabet, message_length));
}

Message transcode(const Message& message, uint64_t message_alphabet,
                  uint64_t download_alphabet) {
  check_alphabets(message_alphabet, download_alphabet);
  const uint64_t lprime =
      transcoded_length(message.size(), message_alphabet, download_alphabet);
  BigInt value = 0;
  for (uint64_t symbol : message) {
    if (symbol >= message_alphabet) {
      throw std::invalid_argument("transcode: symbol out of alphabet");
    }
    value = value * message_alphabet + symbol;
  }
  Message coded(lprime, 0);
  for (uint64_t i = lprime; i > 0 && value > 0; --i) {
    coded[i - 1] = (value % download_alphabet).convert_to<uint64_t>();
    value /= download_alphabet;
  }
  if (value > 0) {
    throw std::logic_error("transcode: width too small");
  }
  return coded;
}

Message transcode_back(const Message& coded, uint64_t message_length,
                       uint64_t message_alphabet, uint64_t download_alphabet) {
  check_alphabets(message_alphabet, download_alphabet);
  BigInt value = 0;
  for (uint64_t symbol : coded) {
    if (symbol >= download_alphabet) {
      throw std::invalid_argument("transcode: symbol out of alphabet");
    }
    value = value * download_alphabet + symbol;
  }
  if (value >= pow_big(message_alphabet, message_length)) {
    throw std::invalid_argument("transcode: codeword outside the image");
  }
  Message message(message_length, 0);
  for (uint64_t i = message_length; i > 0 && value > 0; --i) {
    message[i - 1] = (value % message_alphabet).convert_to<uint64_t>();
    value /= message_alphabet;
  }
  return message;
}

MessageStore transcode_store(const MessageStore& store,
                             uint64_t message_length,
                             uint64_t message_alphabet,
                             uint64_t download_alphabet) {
  MessageStore coded;
  coded.alphabet = download_alphabet;
  coded.messages.reserve(store.messages.size());
  for (const auto& message : store.messages) {
    if (message.size() != message_length) {
      throw std::invalid_argument("transcode: message length mismatch");
    }
    coded.messages.push_back(
        transcode(message, message_alphabet, download_alphabet));
  }
  return coded;
}

TranscodedLength mismatched_cost_bounds(const SchemeParams& params) {
  params.validate();
  if (params.num_databases < 2) {
    throw std::invalid_argument(
        "mismatched bounds: N = 1 is served by the trivial full download");
  }
  TranscodedLength result;
  result.lprime =
      transcoded_length(params.message_length, params.message_alphabet,
                        params.download_alphabet);
  result.achieved_cost = optimal_download_cost(
      params.num_databases, params.num_messages, result.lprime);

  // Least d with d >= L log_M'(M) / C, i.e. with
  // M'^(d * num) >= M^(L * den) where C = num/den in lowest terms.
  const Rational c = capacity(params.num_databases, params.num_messages);
  const uint64_t num = to_u64(c.num, "capacity numerator");
  const uint64_t den = to_u64(c.den, "capacity denominator");
  const BigInt target =
      pow_big(params.message_alphabet, params.message_length * den);
  const uint64_t scaled =
      minimal_exponent(params.download_alphabet, target);
  result.lower_bound_cost =
      to_u64(ceil_div(BigInt(scaled), BigInt(num)), "lower bound cost");
  result.exactly_optimal =
      result.lower_bound_cost == result.achieved_cost;
  return result;
}

Transcript mismatched_run(const SchemeParams& params, uint32_t theta,
                          const MessageStore& store, uint64_t seed) {
  params.validate();
  store.validate(params);
  const uint64_t lprime =
      transcoded_length(params.message_length, params.message_alphabet,
                        params.download_alphabet);
  const MessageStore coded =
      transcode_store(store, params.message_length, params.message_alphabet,
                      params.download_alphabet);

  SchemeParams inner = params;
  inner.message_length = lprime;
  inner.message_alphabet = params.download_alphabet;

  Transcript transcript = composite_run(inner, theta, coded, seed);
  transcript.params = params;
  transcript.transcoded_length = lprime;
  transcript.decoded =
      transcode_back(transcript.decoded, params.message_length,
                     params.message_alphabet, params.download_alphabet);
  return transcript;
}

}  // namespace pir
