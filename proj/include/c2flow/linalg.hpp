#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace c2flow {

/// Square sparse matrix in CSR form, rows sorted by column.
struct CsrMatrix {
    int dim = 0;
    std::vector<int> row_ptr; // dim + 1
    std::vector<int> col;
    std::vector<double> val;

    struct Triplet {
        int row, col;
        double val;
    };

    /// Builds CSR from unordered triplets; duplicate (row, col) entries are
    /// summed, exact zeros produced by merging are kept (harmless).
    static CsrMatrix from_triplets(int dim, std::vector<Triplet> entries);

    size_t nnz() const { return col.size(); }
    int max_row_nnz() const;
    /// Dense lookup, O(row nnz). Returns 0 for absent entries.
    double coeff(int r, int c) const;
};

/// Sparse bilinear form B_{alpha,beta,gamma}, grouped by output row alpha.
/// Contraction against a matrix M gives w[alpha] = sum coeff * M(beta, gamma).
struct BilinearTensor {
    int dim = 0;
    std::vector<int> row_ptr; // dim + 1
    std::vector<int> beta;
    std::vector<int> gamma;
    std::vector<double> coeff;

    struct Entry {
        int alpha, beta, gamma;
        double coeff;
    };

    /// Groups entries by alpha, sorts by (beta, gamma) and merges duplicates.
    static BilinearTensor from_entries(int dim, std::vector<Entry> entries);

    size_t nnz() const { return coeff.size(); }
    /// True when every off-diagonal entry has its (gamma, beta) mirror with
    /// an equal coefficient.
    bool is_symmetrized(double tol = 0.0) const;
};

/// Square dense row-major matrix. Allocations are tracked process-wide so
/// tests can pin the solver's memory footprint.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(int dim);
    DenseMatrix(const DenseMatrix& other);
    DenseMatrix(DenseMatrix&& other) noexcept;
    DenseMatrix& operator=(const DenseMatrix& other);
    DenseMatrix& operator=(DenseMatrix&& other) noexcept;
    ~DenseMatrix();

    int dim() const { return dim_; }
    size_t size() const { return data_.size(); }
    double& operator()(int r, int c) { return data_[static_cast<size_t>(r) * dim_ + c]; }
    double operator()(int r, int c) const { return data_[static_cast<size_t>(r) * dim_ + c]; }
    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    void fill(double v);

    /// Bytes of dense-matrix storage currently alive / high-water mark.
    static size_t bytes_in_use();
    static size_t bytes_peak();
    static void reset_peak();

private:
    void account_add(size_t bytes);
    void account_sub(size_t bytes);

    int dim_ = 0;
    std::vector<double> data_;
};

} // namespace c2flow
