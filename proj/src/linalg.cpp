#include "c2flow/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace c2flow {

CsrMatrix CsrMatrix::from_triplets(int dim, std::vector<Triplet> entries) {
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    CsrMatrix m;
    m.dim = dim;
    m.row_ptr.assign(static_cast<size_t>(dim) + 1, 0);
    m.col.reserve(entries.size());
    m.val.reserve(entries.size());
    for (size_t i = 0; i < entries.size();) {
        const int r = entries[i].row;
        const int c = entries[i].col;
        if (r < 0 || r >= dim || c < 0 || c >= dim)
            throw std::invalid_argument("CsrMatrix: entry out of range");
        double v = 0.0;
        while (i < entries.size() && entries[i].row == r && entries[i].col == c)
            v += entries[i++].val;
        m.col.push_back(c);
        m.val.push_back(v);
        m.row_ptr[static_cast<size_t>(r) + 1]++;
    }
    for (int r = 0; r < dim; ++r)
        m.row_ptr[static_cast<size_t>(r) + 1] += m.row_ptr[r];
    return m;
}

int CsrMatrix::max_row_nnz() const {
    int worst = 0;
    for (int r = 0; r < dim; ++r)
        worst = std::max(worst, row_ptr[static_cast<size_t>(r) + 1] - row_ptr[r]);
    return worst;
}

double CsrMatrix::coeff(int r, int c) const {
    for (int e = row_ptr[r]; e < row_ptr[static_cast<size_t>(r) + 1]; ++e)
        if (col[e] == c)
            return val[e];
    return 0.0;
}

BilinearTensor BilinearTensor::from_entries(int dim, std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.alpha, a.beta, a.gamma) < std::tie(b.alpha, b.beta, b.gamma);
    });
    BilinearTensor t;
    t.dim = dim;
    t.row_ptr.assign(static_cast<size_t>(dim) + 1, 0);
    t.beta.reserve(entries.size());
    t.gamma.reserve(entries.size());
    t.coeff.reserve(entries.size());
    for (size_t i = 0; i < entries.size();) {
        const Entry& e = entries[i];
        if (e.alpha < 0 || e.alpha >= dim || e.beta < 0 || e.beta >= dim || e.gamma < 0 ||
            e.gamma >= dim)
            throw std::invalid_argument("BilinearTensor: entry out of range");
        double v = 0.0;
        while (i < entries.size() && entries[i].alpha == e.alpha && entries[i].beta == e.beta &&
               entries[i].gamma == e.gamma)
            v += entries[i++].coeff;
        t.beta.push_back(e.beta);
        t.gamma.push_back(e.gamma);
        t.coeff.push_back(v);
        t.row_ptr[static_cast<size_t>(e.alpha) + 1]++;
    }
    for (int a = 0; a < dim; ++a)
        t.row_ptr[static_cast<size_t>(a) + 1] += t.row_ptr[a];
    return t;
}

bool BilinearTensor::is_symmetrized(double tol) const {
    for (int alpha = 0; alpha < dim; ++alpha) {
        const int begin = row_ptr[alpha];
        const int end = row_ptr[static_cast<size_t>(alpha) + 1];
        for (int e = begin; e < end; ++e) {
            if (beta[e] == gamma[e])
                continue;
            // entries within a row are sorted by (beta, gamma): binary search the mirror
            int lo = begin, hi = end;
            bool found = false;
            while (lo < hi) {
                const int mid = lo + (hi - lo) / 2;
                const auto key = std::make_pair(beta[mid], gamma[mid]);
                const auto want = std::make_pair(gamma[e], beta[e]);
                if (key == want) {
                    found = std::fabs(coeff[mid] - coeff[e]) <= tol;
                    break;
                }
                if (key < want)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            if (!found)
                return false;
        }
    }
    return true;
}

namespace {

std::atomic<size_t> g_dense_bytes{0};
std::atomic<size_t> g_dense_peak{0};

void bump_peak() {
    size_t cur = g_dense_bytes.load();
    size_t peak = g_dense_peak.load();
    while (cur > peak && !g_dense_peak.compare_exchange_weak(peak, cur)) {
    }
}

} // namespace

DenseMatrix::DenseMatrix(int dim) : dim_(dim), data_(static_cast<size_t>(dim) * dim, 0.0) {
    account_add(data_.size() * sizeof(double));
}

DenseMatrix::DenseMatrix(const DenseMatrix& other) : dim_(other.dim_), data_(other.data_) {
    account_add(data_.size() * sizeof(double));
}

DenseMatrix::DenseMatrix(DenseMatrix&& other) noexcept
    : dim_(other.dim_), data_(std::move(other.data_)) {
    other.dim_ = 0;
    other.data_.clear();
}

DenseMatrix& DenseMatrix::operator=(const DenseMatrix& other) {
    if (this != &other) {
        account_sub(data_.size() * sizeof(double));
        dim_ = other.dim_;
        data_ = other.data_;
        account_add(data_.size() * sizeof(double));
    }
    return *this;
}

DenseMatrix& DenseMatrix::operator=(DenseMatrix&& other) noexcept {
    if (this != &other) {
        account_sub(data_.size() * sizeof(double));
        dim_ = other.dim_;
        data_ = std::move(other.data_);
        other.dim_ = 0;
        other.data_.clear();
    }
    return *this;
}

DenseMatrix::~DenseMatrix() {
    account_sub(data_.size() * sizeof(double));
}

void DenseMatrix::fill(double v) {
    std::fill(data_.begin(), data_.end(), v);
}

void DenseMatrix::account_add(size_t bytes) {
    g_dense_bytes.fetch_add(bytes);
    bump_peak();
}

void DenseMatrix::account_sub(size_t bytes) {
    g_dense_bytes.fetch_sub(bytes);
}

size_t DenseMatrix::bytes_in_use() {
    return g_dense_bytes.load();
}

size_t DenseMatrix::bytes_peak() {
    return g_dense_peak.load();
}

void DenseMatrix::reset_peak() {
    g_dense_peak.store(g_dense_bytes.load());
}

} // namespace c2flow
