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

#include "errtel/stabilizer_tableau.h"

#include <algorithm>
#include <stdexcept>

namespace errtel {

namespace {

bool bit_of(std::span<const uint64_t> words, QubitId q) {
    return (words[q >> 6] >> (q & 63)) & 1;
}

void flip_bit(std::span<uint64_t> words, QubitId q) {
    words[q >> 6] ^= uint64_t{1} << (q & 63);
}

/// A column of the symplectic matrix: the x or z bit of one qubit.
struct Column {
    QubitId qubit;
    bool z;
};

bool column_bit(const PauliString &p, Column c) {
    return bit_of(c.z ? p.zs() : p.xs(), c.qubit);
}

/// Reduced row echelon form over the given column order. Returns the pivot
/// column index of each row, in row order; rows past the rank are dropped.
std::vector<size_t> reduce_rows(std::vector<PauliString> &rows, const std::vector<Column> &columns) {
    std::vector<size_t> pivots;
    size_t next = 0;
    for (size_t c = 0; c < columns.size() && next < rows.size(); c++) {
        size_t pivot = next;
        while (pivot < rows.size() && !column_bit(rows[pivot], columns[c])) {
            pivot++;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[pivot], rows[next]);
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != next && column_bit(rows[r], columns[c])) {
                rows[r].inplace_right_mul(rows[next]);
            }
        }
        pivots.push_back(c);
        next++;
    }
    rows.resize(next);
    return pivots;
}

std::vector<Column> interleaved_columns(std::span<const QubitId> qubits) {
    std::vector<Column> columns;
    columns.reserve(2 * qubits.size());
    for (QubitId q : qubits) {
        columns.push_back({q, false});
        columns.push_back({q, true});
    }
    return columns;
}

}  // namespace

StabilizerTableau::StabilizerTableau(size_t num_qubits)
    : n_(num_qubits),
      words_(words_for_bits(num_qubits)),
      xs_(2 * num_qubits * words_, 0),
      zs_(2 * num_qubits * words_, 0),
      signs_(2 * num_qubits, 0),
      status_(num_qubits),
      frame_(num_qubits) {
    for (QubitId q = 0; q < n_; q++) {
        flip_bit(zrow(q), q);
        flip_bit(xrow(n_ + q), q);
    }
}

StabilizerTableau StabilizerTableau::graph_state(const GraphTopology &topology) {
    StabilizerTableau t(topology.node_count());
    for (auto [a, b] : topology.edges()) {
        flip_bit(t.zrow(t.n_ + a), b);
        flip_bit(t.zrow(t.n_ + b), a);
    }
    return t;
}

void StabilizerTableau::require_active(QubitId q, const char *what) const {
    if (q >= n_) {
        throw std::invalid_argument(std::string(what) + ": qubit " + std::to_string(q) + " out of range");
    }
    if (!status_[q].active()) {
        throw std::invalid_argument(std::string(what) + ": qubit " + std::to_string(q) + " is not active");
    }
}

PauliString StabilizerTableau::row(size_t r) const {
    PauliString p(n_);
    std::copy(xrow(r).begin(), xrow(r).end(), p.xs().begin());
    std::copy(zrow(r).begin(), zrow(r).end(), p.zs().begin());
    p.set_negative(signs_[r] != 0);
    return p;
}

void StabilizerTableau::set_row(size_t r, const PauliString &p) {
    std::copy(p.xs().begin(), p.xs().end(), xrow(r).begin());
    std::copy(p.zs().begin(), p.zs().end(), zrow(r).begin());
    signs_[r] = p.negative();
}

void StabilizerTableau::row_mul(size_t target, size_t source) {
    uint8_t log_i = detail::mul_words_log_i(xrow(target), zrow(target), xrow(source), zrow(source));
    log_i = static_cast<uint8_t>((log_i + 2 * signs_[target] + 2 * signs_[source]) & 3);
    // Destabilizer rows may pick up an imaginary phase; their signs are never read.
    signs_[target] = (log_i & 2) != 0;
}

void StabilizerTableau::apply_cz(QubitId a, QubitId b) {
    require_active(a, "apply_cz");
    require_active(b, "apply_cz");
    if (a == b) {
        throw std::invalid_argument("apply_cz: qubits must differ");
    }
    size_t wa = a >> 6, wb = b >> 6;
    unsigned sa = a & 63, sb = b & 63;
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t *x = xs_.data() + r * words_;
        uint64_t *z = zs_.data() + r * words_;
        uint64_t xa = (x[wa] >> sa) & 1, xb = (x[wb] >> sb) & 1;
        if (!(xa | xb)) {
            continue;
        }
        uint64_t za = (z[wa] >> sa) & 1, zb = (z[wb] >> sb) & 1;
        signs_[r] ^= static_cast<uint8_t>(xa & xb & (za ^ zb));
        z[wa] ^= xb << sa;
        z[wb] ^= xa << sb;
    }
}

void StabilizerTableau::apply_pauli(const PauliString &p) {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("apply_pauli: size mismatch");
    }
    for (QubitId q = 0; q < n_; q++) {
        if (p.get(q) != Pauli::I) {
            require_active(q, "apply_pauli");
        }
    }
    for (size_t r = 0; r < 2 * n_; r++) {
        signs_[r] ^= static_cast<uint8_t>(detail::anticommute_words(xrow(r), zrow(r), p.xs(), p.zs()));
    }
}

void StabilizerTableau::apply_pauli(QubitId q, Pauli p) {
    require_active(q, "apply_pauli");
    if (p == Pauli::I) {
        return;
    }
    bool px = has_x(p), pz = has_z(p);
    for (size_t r = 0; r < 2 * n_; r++) {
        signs_[r] ^= static_cast<uint8_t>((px && zbit(r, q)) != (pz && xbit(r, q)));
    }
}

bool StabilizerTableau::is_random(QubitId q, Basis basis) const {
    for (size_t r = n_; r < 2 * n_; r++) {
        if (row_anticommutes(r, q, basis)) {
            return true;
        }
    }
    return false;
}

MeasurementOutcome StabilizerTableau::measure_impl(
    QubitId q, Basis basis, Rng *rng, int preferred, bool track_frame) {
    MeasurementOutcome out;
    out.qubit = q;
    out.basis = basis;
    bool frame_flip = basis == Basis::Z ? bit_of(frame_.xs(), q) : bit_of(frame_.zs(), q);

    size_t pivot = 2 * n_;
    for (size_t r = n_; r < 2 * n_; r++) {
        if (row_anticommutes(r, q, basis)) {
            pivot = r;
            break;
        }
    }

    if (pivot < 2 * n_) {
        for (size_t r = 0; r < 2 * n_; r++) {
            if (r != pivot && row_anticommutes(r, q, basis)) {
                row_mul(r, pivot);
            }
        }
        // The old generator maps the +1 branch onto the -1 branch while fixing
        // every other generator, so it is the byproduct of a -1 outcome.
        size_t partner = pivot - n_;
        std::copy(xrow(pivot).begin(), xrow(pivot).end(), xrow(partner).begin());
        std::copy(zrow(pivot).begin(), zrow(pivot).end(), zrow(partner).begin());
        signs_[partner] = signs_[pivot];

        bool negative = rng != nullptr ? rng->coin() : preferred < 0;
        std::fill(xrow(pivot).begin(), xrow(pivot).end(), 0);
        std::fill(zrow(pivot).begin(), zrow(pivot).end(), 0);
        flip_bit(basis == Basis::Z ? zrow(pivot) : xrow(pivot), q);
        signs_[pivot] = negative;

        out.value = negative ? -1 : +1;
        out.deterministic = false;
        out.frame_value = frame_flip ? -out.value : out.value;
        if (track_frame && out.frame_value < 0) {
            detail::mul_words_log_i(frame_.xs(), frame_.zs(), xrow(partner), zrow(partner));
        }
    } else {
        // The measured operator is in the group: multiply up the generators
        // whose destabilizers anticommute with it.
        std::vector<uint64_t> sx(words_, 0), sz(words_, 0);
        unsigned log_i = 0;
        for (size_t d = 0; d < n_; d++) {
            if (row_anticommutes(d, q, basis)) {
                log_i += detail::mul_words_log_i(sx, sz, xrow(n_ + d), zrow(n_ + d)) + 2u * signs_[n_ + d];
            }
        }
        out.value = (log_i & 2) ? -1 : +1;
        out.deterministic = true;
        out.frame_value = frame_flip ? -out.value : out.value;
    }
    return out;
}

MeasurementOutcome StabilizerTableau::measure(QubitId q, Basis basis, Rng &rng) {
    require_active(q, "measure");
    MeasurementOutcome out = measure_impl(q, basis, &rng, +1, true);
    status_[q] = {basis == Basis::Z ? QubitStatus::Kind::MeasuredZ : QubitStatus::Kind::MeasuredX, out.value};
    return out;
}

MeasurementOutcome StabilizerTableau::measure_forced(QubitId q, Basis basis, int preferred) {
    require_active(q, "measure");
    MeasurementOutcome out = measure_impl(q, basis, nullptr, preferred, true);
    status_[q] = {basis == Basis::Z ? QubitStatus::Kind::MeasuredZ : QubitStatus::Kind::MeasuredX, out.value};
    return out;
}

void StabilizerTableau::mark_lost(QubitId q, Rng &rng) {
    require_active(q, "mark_lost");
    apply_pauli(q, static_cast<Pauli>(rng.below(4)));
    // Nobody sees this outcome, so no byproduct can be booked for it.
    measure_impl(q, Basis::Z, &rng, +1, false);
    status_[q] = {QubitStatus::Kind::Lost, 0};
}

std::optional<int> StabilizerTableau::expectation(const PauliString &p) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("expectation: size mismatch");
    }
    for (size_t r = n_; r < 2 * n_; r++) {
        if (detail::anticommute_words(xrow(r), zrow(r), p.xs(), p.zs())) {
            return std::nullopt;
        }
    }
    PauliString scratch(n_);
    for (size_t d = 0; d < n_; d++) {
        if (detail::anticommute_words(xrow(d), zrow(d), p.xs(), p.zs())) {
            scratch.inplace_right_mul(row(n_ + d));
        }
    }
    return scratch.negative() == p.negative() ? +1 : -1;
}

void StabilizerTableau::clear_pauli_frame() {
    frame_ = PauliString(n_);
}

PauliString StabilizerTableau::generator(size_t k) const {
    return row(n_ + k);
}

std::vector<PauliString> StabilizerTableau::generators() const {
    std::vector<PauliString> out;
    out.reserve(n_);
    for (size_t k = 0; k < n_; k++) {
        out.push_back(generator(k));
    }
    return out;
}

std::vector<PauliString> StabilizerTableau::canonical_form() const {
    std::vector<QubitId> all(n_);
    for (QubitId q = 0; q < n_; q++) {
        all[q] = q;
    }
    std::vector<PauliString> rows = generators();
    reduce_rows(rows, interleaved_columns(all));
    return rows;
}

std::vector<PauliString> StabilizerTableau::canonical_form_on(std::span<const QubitId> keep) const {
    std::vector<bool> kept(n_, false);
    for (QubitId q : keep) {
        kept.at(q) = true;
    }
    std::vector<QubitId> order;
    for (QubitId q = 0; q < n_; q++) {
        if (!kept[q]) {
            order.push_back(q);
        }
    }
    size_t first_kept_column = 2 * order.size();
    std::vector<QubitId> sorted_keep(keep.begin(), keep.end());
    std::sort(sorted_keep.begin(), sorted_keep.end());
    order.insert(order.end(), sorted_keep.begin(), sorted_keep.end());

    std::vector<PauliString> rows = generators();
    std::vector<size_t> pivots = reduce_rows(rows, interleaved_columns(order));
    std::vector<PauliString> out;
    for (size_t r = 0; r < rows.size(); r++) {
        if (pivots[r] >= first_kept_column) {
            out.push_back(std::move(rows[r]));
        }
    }
    return out;
}

bool StabilizerTableau::generators_commute() const {
    for (size_t a = n_; a < 2 * n_; a++) {
        for (size_t b = a + 1; b < 2 * n_; b++) {
            if (detail::anticommute_words(xrow(a), zrow(a), xrow(b), zrow(b))) {
                return false;
            }
        }
    }
    return true;
}

size_t StabilizerTableau::generator_rank() const {
    std::vector<QubitId> all(n_);
    for (QubitId q = 0; q < n_; q++) {
        all[q] = q;
    }
    std::vector<PauliString> rows = generators();
    return reduce_rows(rows, interleaved_columns(all)).size();
}

std::string StabilizerTableau::str() const {
    std::string out;
    for (size_t k = 0; k < n_; k++) {
        out += generator(k).str();
        out += '\n';
    }
    return out;
}

}  // namespace errtel
