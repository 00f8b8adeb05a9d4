// Copyright 2026 The errtel Authors
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

#include "errtel/pauli_string.h"

#include <bit>
#include <stdexcept>

namespace errtel {

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I:
            return 'I';
        case Pauli::X:
            return 'X';
        case Pauli::Y:
            return 'Y';
        case Pauli::Z:
            return 'Z';
    }
    return '?';
}

namespace detail {

uint8_t mul_words_log_i(
    std::span<uint64_t> x1, std::span<uint64_t> z1, std::span<const uint64_t> x2, std::span<const uint64_t> z2) {
    // Per-bit mod-4 counters of the +i / -i factors picked up at each qubit.
    uint64_t cnt1 = 0;
    uint64_t cnt2 = 0;
    for (size_t w = 0; w < x1.size(); w++) {
        uint64_t old_x1 = x1[w];
        uint64_t old_z1 = z1[w];
        uint64_t new_x1 = old_x1 ^ x2[w];
        uint64_t new_z1 = old_z1 ^ z2[w];
        x1[w] = new_x1;
        z1[w] = new_z1;
        uint64_t x1z2 = old_x1 & z2[w];
        uint64_t anti = (x2[w] & old_z1) ^ x1z2;
        cnt2 ^= (cnt1 ^ new_x1 ^ new_z1 ^ x1z2) & anti;
        cnt1 ^= anti;
    }
    return static_cast<uint8_t>((std::popcount(cnt1) + 2 * std::popcount(cnt2)) & 3);
}

bool anticommute_words(
    std::span<const uint64_t> x1, std::span<const uint64_t> z1, std::span<const uint64_t> x2,
    std::span<const uint64_t> z2) {
    uint64_t acc = 0;
    for (size_t w = 0; w < x1.size(); w++) {
        acc ^= (x1[w] & z2[w]) ^ (z1[w] & x2[w]);
    }
    return (std::popcount(acc) & 1) != 0;
}

}  // namespace detail

PauliString::PauliString(size_t num_qubits)
    : num_qubits_(num_qubits), xs_(words_for_bits(num_qubits), 0), zs_(words_for_bits(num_qubits), 0) {
}

PauliString PauliString::from_str(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    PauliString result(text.size());
    result.negative_ = negative;
    for (size_t q = 0; q < text.size(); q++) {
        switch (text[q]) {
            case 'I':
            case '_':
                break;
            case 'X':
                result.set(q, Pauli::X);
                break;
            case 'Y':
                result.set(q, Pauli::Y);
                break;
            case 'Z':
                result.set(q, Pauli::Z);
                break;
            default:
                throw std::invalid_argument("bad Pauli character '" + std::string(1, text[q]) + "'");
        }
    }
    return result;
}

PauliString PauliString::single(size_t num_qubits, QubitId q, Pauli p) {
    PauliString result(num_qubits);
    result.set(q, p);
    return result;
}

Pauli PauliString::get(QubitId q) const {
    uint64_t bit = uint64_t{1} << (q & 63);
    return pauli_from_bits((xs_[q >> 6] & bit) != 0, (zs_[q >> 6] & bit) != 0);
}

void PauliString::set(QubitId q, Pauli p) {
    if (q >= num_qubits_) {
        throw std::out_of_range("qubit index out of range");
    }
    uint64_t bit = uint64_t{1} << (q & 63);
    xs_[q >> 6] = has_x(p) ? (xs_[q >> 6] | bit) : (xs_[q >> 6] & ~bit);
    zs_[q >> 6] = has_z(p) ? (zs_[q >> 6] | bit) : (zs_[q >> 6] & ~bit);
}

size_t PauliString::weight() const {
    size_t total = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        total += std::popcount(xs_[w] | zs_[w]);
    }
    return total;
}

bool PauliString::is_identity() const {
    return weight() == 0;
}

bool PauliString::commutes(const PauliString &other) const {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("Pauli strings have different sizes");
    }
    return !detail::anticommute_words(xs_, zs_, other.xs_, other.zs_);
}

uint8_t PauliString::inplace_right_mul(const PauliString &rhs) {
    if (rhs.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("Pauli strings have different sizes");
    }
    uint8_t log_i = detail::mul_words_log_i(xs_, zs_, rhs.xs_, rhs.zs_);
    log_i = static_cast<uint8_t>((log_i + 2 * negative_ + 2 * rhs.negative_) & 3);
    negative_ = (log_i & 2) != 0;
    return log_i;
}

PauliString PauliString::unsigned_copy() const {
    PauliString result = *this;
    result.negative_ = false;
    return result;
}

std::string PauliString::str() const {
    std::string out;
    out.reserve(num_qubits_ + 1);
    out.push_back(negative_ ? '-' : '+');
    for (QubitId q = 0; q < num_qubits_; q++) {
        out.push_back(pauli_char(get(q)));
    }
    return out;
}

PauliString operator*(const PauliString &a, const PauliString &b) {
    PauliString result = a;
    if (result.inplace_right_mul(b) & 1) {
        throw std::invalid_argument("product of anticommuting Pauli strings is not Hermitian");
    }
    return result;
}

}  // namespace errtel
