#include "gridflux/tensor.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace gridflux::ad {

namespace {

std::string shape_str(const std::vector<int>& s) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << ")";
    return os.str();
}

[[noreturn]] void shape_error(const char* op, const Tensor& a, const Tensor& b) {
    throw std::invalid_argument(std::string(op) + ": incompatible shapes " +
                                shape_str(a.shape()) + " and " + shape_str(b.shape()));
}

void require_same_shape(const char* op, const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b)) shape_error(op, a, b);
}

/// Tape an op result lives on: the operands' common tape, or null when all
/// operands are constants (the op then folds eagerly).
Tape* result_tape(const Tensor& a) { return a.tape(); }
Tape* result_tape(const Tensor& a, const Tensor& b) {
    Tape* t = a.tape();
    if (b.tape()) {
        if (t && t != b.tape())
            throw std::invalid_argument("operands recorded on two different tapes");
        t = b.tape();
    }
    return t;
}

// Shared-storage handle used inside backward closures.
using Data = std::shared_ptr<const std::vector<double>>;

Data hold(const Tensor& t) {
    // Copies the values; cheap at the sizes this project uses and immune to
    // later leaf mutation between optimizer steps.
    return std::make_shared<const std::vector<double>>(t.data().begin(), t.data().end());
}

// out += a * b^T style accumulation helpers (row-major, ikj order).
void gemm_acc(const double* a, const double* b, double* out, int m, int k, int n) {
    for (int i = 0; i < m; ++i) {
        const double* arow = a + static_cast<std::ptrdiff_t>(i) * k;
        double* orow = out + static_cast<std::ptrdiff_t>(i) * n;
        for (int p = 0; p < k; ++p) {
            double av = arow[p];
            if (av == 0.0) continue;
            const double* brow = b + static_cast<std::ptrdiff_t>(p) * n;
            for (int j = 0; j < n; ++j) orow[j] += av * brow[j];
        }
    }
}

// out(m,k) += g(m,n) * b(k,n)^T
void gemm_acc_bt(const double* g, const double* b, double* out, int m, int n, int k) {
    for (int i = 0; i < m; ++i) {
        const double* grow = g + static_cast<std::ptrdiff_t>(i) * n;
        double* orow = out + static_cast<std::ptrdiff_t>(i) * k;
        for (int p = 0; p < k; ++p) {
            const double* brow = b + static_cast<std::ptrdiff_t>(p) * n;
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += grow[j] * brow[j];
            orow[p] += acc;
        }
    }
}

// out(k,n) += a(m,k)^T * g(m,n)
void gemm_acc_at(const double* a, const double* g, double* out, int m, int k, int n) {
    for (int i = 0; i < m; ++i) {
        const double* arow = a + static_cast<std::ptrdiff_t>(i) * k;
        const double* grow = g + static_cast<std::ptrdiff_t>(i) * n;
        for (int p = 0; p < k; ++p) {
            double av = arow[p];
            if (av == 0.0) continue;
            double* orow = out + static_cast<std::ptrdiff_t>(p) * n;
            for (int j = 0; j < n; ++j) orow[j] += av * grow[j];
        }
    }
}

/// Builds the result tensor and records the backward closure when taped.
Tensor make_result(std::vector<int> shape, std::vector<double> data, Tape* tape,
                   Tape::BackwardFn back) {
    Tensor out(std::move(shape), std::move(data));
    if (tape) {
        int node = tape->emit(out.size(), std::move(back));
        tape->bind(out, node);
    }
    return out;
}

/// Elementwise binary op: forward f(a,b); backward multiplies the upstream
/// gradient by dfa/dfb evaluated at the inputs.
template <class F, class Dfa, class Dfb>
Tensor ew_binary(const char* name, const Tensor& a, const Tensor& b, F f, Dfa dfa, Dfb dfb) {
    require_same_shape(name, a, b);
    const int n = a.size();
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(a.data()[i], b.data()[i]);
    Tape* t = result_tape(a, b);
    if (!t) return Tensor(a.shape(), std::move(out));

    int an = a.node(), bn = b.node();
    Data av = hold(a), bv = hold(b);
    return make_result(a.shape(), std::move(out), t,
                       [an, bn, av, bv, dfa, dfb, n](std::span<const double> g, Tape& tp) {
                           if (an >= 0) {
                               auto& ga = tp.grad_buffer(an);
                               for (int i = 0; i < n; ++i)
                                   ga[static_cast<std::size_t>(i)] +=
                                       g[static_cast<std::size_t>(i)] * dfa((*av)[i], (*bv)[i]);
                           }
                           if (bn >= 0) {
                               auto& gb = tp.grad_buffer(bn);
                               for (int i = 0; i < n; ++i)
                                   gb[static_cast<std::size_t>(i)] +=
                                       g[static_cast<std::size_t>(i)] * dfb((*av)[i], (*bv)[i]);
                           }
                       });
}

/// Elementwise unary op.
template <class F, class Df>
Tensor ew_unary(const Tensor& a, F f, Df df) {
    const int n = a.size();
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(a.data()[i]);
    Tape* t = result_tape(a);
    if (!t) return Tensor(a.shape(), std::move(out));

    int an = a.node();
    Data av = hold(a);
    return make_result(a.shape(), std::move(out), t,
                       [an, av, df, n](std::span<const double> g, Tape& tp) {
                           auto& ga = tp.grad_buffer(an);
                           for (int i = 0; i < n; ++i)
                               ga[static_cast<std::size_t>(i)] +=
                                   g[static_cast<std::size_t>(i)] * df((*av)[i]);
                       });
}

}  // namespace

// ---------------------------------------------------------------------------
// Tensor
// ---------------------------------------------------------------------------

Tensor::Tensor(std::vector<int> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::make_shared<std::vector<double>>(std::move(data))) {
    std::size_t expect = 1;
    for (int d : shape_) {
        if (d < 0) throw std::invalid_argument("negative dimension in tensor shape");
        expect *= static_cast<std::size_t>(d);
    }
    if (expect != data_->size())
        throw std::invalid_argument("tensor data length " + std::to_string(data_->size()) +
                                    " does not match shape " + shape_str(shape_));
}

Tensor Tensor::zeros(std::vector<int> shape) {
    std::size_t n = 1;
    for (int d : shape) n *= static_cast<std::size_t>(d);
    return Tensor(std::move(shape), std::vector<double>(n, 0.0));
}

Tensor Tensor::full(std::vector<int> shape, double value) {
    std::size_t n = 1;
    for (int d : shape) n *= static_cast<std::size_t>(d);
    return Tensor(std::move(shape), std::vector<double>(n, value));
}

Tensor Tensor::scalar(double value) { return Tensor({1}, {value}); }

Tensor Tensor::vector(std::vector<double> values) {
    int n = static_cast<int>(values.size());
    return Tensor({n}, std::move(values));
}

int Tensor::size() const {
    if (!data_) return 0;
    return static_cast<int>(data_->size());
}

int Tensor::rows() const { return shape_.empty() ? 1 : shape_[0]; }

int Tensor::cols() const { return shape_.size() < 2 ? 1 : shape_[1]; }

std::span<const double> Tensor::data() const {
    if (!data_) return {};
    return {data_->data(), data_->size()};
}

std::vector<double>& Tensor::raw() {
    if (!data_) throw std::logic_error("raw() on empty tensor");
    return *data_;
}

double Tensor::item() const {
    if (size() != 1) throw std::invalid_argument("item() requires a size-1 tensor");
    return (*data_)[0];
}

double Tensor::at(int i) const { return (*data_)[static_cast<std::size_t>(i)]; }

double Tensor::at(int i, int j) const {
    return (*data_)[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols()) +
                    static_cast<std::size_t>(j)];
}

Tensor Tensor::clone() const {
    Tensor out;
    out.shape_ = shape_;
    out.data_ = data_ ? std::make_shared<std::vector<double>>(*data_) : nullptr;
    return out;
}

// ---------------------------------------------------------------------------
// Tape
// ---------------------------------------------------------------------------

int Tape::emit(int size, BackwardFn back) {
    if (consumed_) throw std::logic_error("tape already consumed by backward()");
    nodes_.push_back(Node{size, std::move(back)});
    return static_cast<int>(nodes_.size()) - 1;
}

std::vector<double>& Tape::grad_buffer(int node) {
    auto& buf = grads_[static_cast<std::size_t>(node)];
    if (buf.empty() && nodes_[static_cast<std::size_t>(node)].size > 0)
        buf.assign(static_cast<std::size_t>(nodes_[static_cast<std::size_t>(node)].size), 0.0);
    return buf;
}

Tensor Tape::watch(const Tensor& value) {
    if (value.on_tape()) throw std::invalid_argument("tensor is already on a tape");
    Tensor out = value;  // shares storage with the caller's leaf
    int node = emit(out.size(), nullptr);
    bind(out, node);
    return out;
}

void Tape::backward(const Tensor& loss) {
    if (consumed_) throw std::logic_error("backward() already ran on this tape");
    if (loss.tape() != this || loss.node() < 0)
        throw std::invalid_argument("loss is not recorded on this tape");
    if (loss.size() != 1) throw std::invalid_argument("backward() requires a scalar loss");

    grads_.assign(nodes_.size(), {});
    grad_buffer(loss.node())[0] = 1.0;
    for (int i = loss.node(); i >= 0; --i) {
        auto& g = grads_[static_cast<std::size_t>(i)];
        if (g.empty()) continue;  // node does not influence the loss
        if (auto& back = nodes_[static_cast<std::size_t>(i)].back) back(g, *this);
    }
    consumed_ = true;
}

Tensor Tape::grad(const Tensor& leaf) const {
    if (!consumed_) throw std::logic_error("grad() requires backward() to have run");
    if (leaf.tape() != this || leaf.node() < 0)
        throw std::invalid_argument("tensor is not recorded on this tape");
    const auto& buf = grads_[static_cast<std::size_t>(leaf.node())];
    if (buf.empty()) return Tensor::zeros(leaf.shape());
    return Tensor(leaf.shape(), buf);
}

// ---------------------------------------------------------------------------
// Elementwise primitives
// ---------------------------------------------------------------------------

Tensor add(const Tensor& a, const Tensor& b) {
    return ew_binary(
        "add", a, b, [](double x, double y) { return x + y; },
        [](double, double) { return 1.0; }, [](double, double) { return 1.0; });
}

Tensor sub(const Tensor& a, const Tensor& b) {
    return ew_binary(
        "sub", a, b, [](double x, double y) { return x - y; },
        [](double, double) { return 1.0; }, [](double, double) { return -1.0; });
}

Tensor mul(const Tensor& a, const Tensor& b) {
    return ew_binary(
        "mul", a, b, [](double x, double y) { return x * y; },
        [](double, double y) { return y; }, [](double x, double) { return x; });
}

Tensor div(const Tensor& a, const Tensor& b) {
    return ew_binary(
        "div", a, b, [](double x, double y) { return x / y; },
        [](double, double y) { return 1.0 / y; },
        [](double x, double y) { return -x / (y * y); });
}

Tensor neg(const Tensor& a) {
    return ew_unary(a, [](double x) { return -x; }, [](double) { return -1.0; });
}

Tensor scale(const Tensor& a, double c) {
    return ew_unary(a, [c](double x) { return c * x; }, [c](double) { return c; });
}

Tensor add_scalar(const Tensor& a, double c) {
    return ew_unary(a, [c](double x) { return x + c; }, [](double) { return 1.0; });
}

Tensor relu(const Tensor& a) {
    // Subgradient at the kink is 0.
    return ew_unary(a, [](double x) { return x > 0.0 ? x : 0.0; },
                    [](double x) { return x > 0.0 ? 1.0 : 0.0; });
}

Tensor square(const Tensor& a) {
    return ew_unary(a, [](double x) { return x * x; }, [](double x) { return 2.0 * x; });
}

Tensor sqrt(const Tensor& a) {
    return ew_unary(a, [](double x) { return std::sqrt(x); },
                    [](double x) { return 0.5 / std::sqrt(x); });
}

Tensor sin(const Tensor& a) {
    return ew_unary(a, [](double x) { return std::sin(x); },
                    [](double x) { return std::cos(x); });
}

Tensor cos(const Tensor& a) {
    return ew_unary(a, [](double x) { return std::cos(x); },
                    [](double x) { return -std::sin(x); });
}

Tensor atan2(const Tensor& y, const Tensor& x) {
    return ew_binary(
        "atan2", y, x, [](double yy, double xx) { return std::atan2(yy, xx); },
        [](double yy, double xx) { return xx / (xx * xx + yy * yy); },
        [](double yy, double xx) { return -yy / (xx * xx + yy * yy); });
}

// ---------------------------------------------------------------------------
// Linear algebra and structure primitives
// ---------------------------------------------------------------------------

Tensor matmul(const Tensor& a, const Tensor& b) {
    if (a.rank() != 2 || b.rank() != 2 || a.shape()[1] != b.shape()[0])
        shape_error("matmul", a, b);
    const int m = a.shape()[0], k = a.shape()[1], n = b.shape()[1];
    std::vector<double> out(static_cast<std::size_t>(m) * static_cast<std::size_t>(n), 0.0);
    gemm_acc(a.data().data(), b.data().data(), out.data(), m, k, n);

    Tape* t = result_tape(a, b);
    if (!t) return Tensor({m, n}, std::move(out));

    int an = a.node(), bn = b.node();
    Data av = hold(a), bv = hold(b);
    return make_result({m, n}, std::move(out), t,
                       [an, bn, av, bv, m, k, n](std::span<const double> g, Tape& tp) {
                           if (an >= 0)
                               gemm_acc_bt(g.data(), bv->data(), tp.grad_buffer(an).data(), m, n,
                                           k);
                           if (bn >= 0)
                               gemm_acc_at(av->data(), g.data(), tp.grad_buffer(bn).data(), m, k,
                                           n);
                       });
}

Tensor mean(const Tensor& a) {
    if (a.size() == 0) throw std::invalid_argument("mean of empty tensor");
    const int n = a.size();
    double acc = 0.0;
    for (double v : a.data()) acc += v;
    double m = acc / n;

    Tape* t = result_tape(a);
    if (!t) return Tensor::scalar(m);
    int an = a.node();
    return make_result({1}, {m}, t, [an, n](std::span<const double> g, Tape& tp) {
        auto& ga = tp.grad_buffer(an);
        double s = g[0] / n;
        for (auto& v : ga) v += s;
    });
}

Tensor sum(const Tensor& a) {
    const int n = a.size();
    double acc = 0.0;
    for (double v : a.data()) acc += v;

    Tape* t = result_tape(a);
    if (!t) return Tensor::scalar(acc);
    int an = a.node();
    return make_result({1}, {acc}, t, [an, n](std::span<const double> g, Tape& tp) {
        auto& ga = tp.grad_buffer(an);
        (void)n;
        for (auto& v : ga) v += g[0];
    });
}

Tensor reshape(const Tensor& a, std::vector<int> shape) {
    std::size_t n = 1;
    for (int d : shape) n *= static_cast<std::size_t>(d);
    if (static_cast<int>(n) != a.size())
        throw std::invalid_argument("reshape to " + shape_str(shape) + " from " +
                                    shape_str(a.shape()));
    std::vector<double> out(a.data().begin(), a.data().end());
    Tape* t = result_tape(a);
    if (!t) return Tensor(std::move(shape), std::move(out));
    int an = a.node();
    return make_result(std::move(shape), std::move(out), t,
                       [an](std::span<const double> g, Tape& tp) {
                           auto& ga = tp.grad_buffer(an);
                           for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
                       });
}

Tensor concat_cols(const Tensor& a, const Tensor& b) {
    if (a.rank() != 2 || b.rank() != 2 || a.shape()[0] != b.shape()[0])
        shape_error("concat_cols", a, b);
    const int n = a.shape()[0], ca = a.shape()[1], cb = b.shape()[1];
    std::vector<double> out(static_cast<std::size_t>(n) * (ca + cb));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < ca; ++j) out[static_cast<std::size_t>(i) * (ca + cb) + j] = a.at(i, j);
        for (int j = 0; j < cb; ++j)
            out[static_cast<std::size_t>(i) * (ca + cb) + ca + j] = b.at(i, j);
    }
    Tape* t = result_tape(a, b);
    if (!t) return Tensor({n, ca + cb}, std::move(out));
    int an = a.node(), bn = b.node();
    return make_result({n, ca + cb}, std::move(out), t,
                       [an, bn, n, ca, cb](std::span<const double> g, Tape& tp) {
                           if (an >= 0) {
                               auto& ga = tp.grad_buffer(an);
                               for (int i = 0; i < n; ++i)
                                   for (int j = 0; j < ca; ++j)
                                       ga[static_cast<std::size_t>(i) * ca + j] +=
                                           g[static_cast<std::size_t>(i) * (ca + cb) + j];
                           }
                           if (bn >= 0) {
                               auto& gb = tp.grad_buffer(bn);
                               for (int i = 0; i < n; ++i)
                                   for (int j = 0; j < cb; ++j)
                                       gb[static_cast<std::size_t>(i) * cb + j] +=
                                           g[static_cast<std::size_t>(i) * (ca + cb) + ca + j];
                           }
                       });
}

Tensor slice_cols(const Tensor& a, int begin, int end) {
    if (a.rank() != 2 || begin < 0 || end > a.shape()[1] || begin >= end)
        throw std::invalid_argument("slice_cols [" + std::to_string(begin) + "," +
                                    std::to_string(end) + ") of " + shape_str(a.shape()));
    const int n = a.shape()[0], c = a.shape()[1], w = end - begin;
    std::vector<double> out(static_cast<std::size_t>(n) * w);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < w; ++j)
            out[static_cast<std::size_t>(i) * w + j] = a.at(i, begin + j);
    Tape* t = result_tape(a);
    if (!t) return Tensor({n, w}, std::move(out));
    int an = a.node();
    return make_result({n, w}, std::move(out), t,
                       [an, n, c, w, begin](std::span<const double> g, Tape& tp) {
                           auto& ga = tp.grad_buffer(an);
                           for (int i = 0; i < n; ++i)
                               for (int j = 0; j < w; ++j)
                                   ga[static_cast<std::size_t>(i) * c + begin + j] +=
                                       g[static_cast<std::size_t>(i) * w + j];
                       });
}

Tensor tile_rows(const Tensor& v, int rows) {
    if (v.rank() != 1) throw std::invalid_argument("tile_rows expects a rank-1 tensor");
    const int c = v.shape()[0];
    std::vector<double> out(static_cast<std::size_t>(rows) * c);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < c; ++j) out[static_cast<std::size_t>(i) * c + j] = v.at(j);
    Tape* t = result_tape(v);
    if (!t) return Tensor({rows, c}, std::move(out));
    int vn = v.node();
    return make_result({rows, c}, std::move(out), t,
                       [vn, rows, c](std::span<const double> g, Tape& tp) {
                           auto& gv = tp.grad_buffer(vn);
                           for (int i = 0; i < rows; ++i)
                               for (int j = 0; j < c; ++j)
                                   gv[static_cast<std::size_t>(j)] +=
                                       g[static_cast<std::size_t>(i) * c + j];
                       });
}

Tensor tile_cols(const Tensor& v, int cols) {
    if (v.rank() != 1) throw std::invalid_argument("tile_cols expects a rank-1 tensor");
    const int n = v.shape()[0];
    std::vector<double> out(static_cast<std::size_t>(n) * cols);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < cols; ++j) out[static_cast<std::size_t>(i) * cols + j] = v.at(i);
    Tape* t = result_tape(v);
    if (!t) return Tensor({n, cols}, std::move(out));
    int vn = v.node();
    return make_result({n, cols}, std::move(out), t,
                       [vn, n, cols](std::span<const double> g, Tape& tp) {
                           auto& gv = tp.grad_buffer(vn);
                           for (int i = 0; i < n; ++i)
                               for (int j = 0; j < cols; ++j)
                                   gv[static_cast<std::size_t>(i)] +=
                                       g[static_cast<std::size_t>(i) * cols + j];
                       });
}

namespace {
void check_index(const std::vector<int>& index, int bound, const char* op) {
    for (std::size_t r = 0; r < index.size(); ++r)
        if (index[r] < 0 || index[r] >= bound)
            throw std::out_of_range(std::string(op) + ": index[" + std::to_string(r) + "]=" +
                                    std::to_string(index[r]) + " out of range [0," +
                                    std::to_string(bound) + ")");
}
}  // namespace

Tensor gather(const Tensor& x, const std::vector<int>& index) {
    if (x.rank() < 1 || x.rank() > 2) throw std::invalid_argument("gather expects rank 1 or 2");
    const int n = x.rows(), c = x.cols();
    check_index(index, n, "gather");
    const int e = static_cast<int>(index.size());
    std::vector<double> out(static_cast<std::size_t>(e) * c);
    for (int r = 0; r < e; ++r)
        for (int j = 0; j < c; ++j)
            out[static_cast<std::size_t>(r) * c + j] =
                x.data()[static_cast<std::size_t>(index[static_cast<std::size_t>(r)]) * c + j];
    std::vector<int> shape = x.rank() == 1 ? std::vector<int>{e} : std::vector<int>{e, c};

    Tape* t = result_tape(x);
    if (!t) return Tensor(std::move(shape), std::move(out));
    int xn = x.node();
    auto idx = std::make_shared<const std::vector<int>>(index);
    return make_result(std::move(shape), std::move(out), t,
                       [xn, idx, c](std::span<const double> g, Tape& tp) {
                           auto& gx = tp.grad_buffer(xn);
                           const int e2 = static_cast<int>(idx->size());
                           for (int r = 0; r < e2; ++r)
                               for (int j = 0; j < c; ++j)
                                   gx[static_cast<std::size_t>((*idx)[static_cast<std::size_t>(r)]) *
                                          c +
                                      j] += g[static_cast<std::size_t>(r) * c + j];
                       });
}

Tensor scatter_sum(const Tensor& values, const std::vector<int>& index, int out_size) {
    if (values.rank() < 1 || values.rank() > 2)
        throw std::invalid_argument("scatter_sum expects rank 1 or 2");
    const int e = values.rows(), c = values.cols();
    if (static_cast<int>(index.size()) != e)
        throw std::invalid_argument("scatter_sum: index length " + std::to_string(index.size()) +
                                    " does not match " + std::to_string(e) + " rows");
    check_index(index, out_size, "scatter_sum");
    std::vector<double> out(static_cast<std::size_t>(out_size) * c, 0.0);
    for (int r = 0; r < e; ++r)
        for (int j = 0; j < c; ++j)
            out[static_cast<std::size_t>(index[static_cast<std::size_t>(r)]) * c + j] +=
                values.data()[static_cast<std::size_t>(r) * c + j];
    std::vector<int> shape =
        values.rank() == 1 ? std::vector<int>{out_size} : std::vector<int>{out_size, c};

    Tape* t = result_tape(values);
    if (!t) return Tensor(std::move(shape), std::move(out));
    int vn = values.node();
    auto idx = std::make_shared<const std::vector<int>>(index);
    return make_result(std::move(shape), std::move(out), t,
                       [vn, idx, c](std::span<const double> g, Tape& tp) {
                           auto& gv = tp.grad_buffer(vn);
                           const int e2 = static_cast<int>(idx->size());
                           for (int r = 0; r < e2; ++r)
                               for (int j = 0; j < c; ++j)
                                   gv[static_cast<std::size_t>(r) * c + j] +=
                                       g[static_cast<std::size_t>(
                                             (*idx)[static_cast<std::size_t>(r)]) *
                                             c +
                                         j];
                       });
}

// ---------------------------------------------------------------------------
// Complex pairing
// ---------------------------------------------------------------------------

ComplexTensor cadd(const ComplexTensor& a, const ComplexTensor& b) {
    return {add(a.re, b.re), add(a.im, b.im)};
}

ComplexTensor complex_matmul(const ComplexTensor& a, const ComplexTensor& b) {
    return {sub(matmul(a.re, b.re), matmul(a.im, b.im)),
            add(matmul(a.re, b.im), matmul(a.im, b.re))};
}

ComplexTensor complex_matvec(const ComplexTensor& w, const ComplexTensor& z) {
    if (z.re.rank() != 1) throw std::invalid_argument("complex_matvec expects a rank-1 z");
    const int n = z.re.shape()[0];
    ComplexTensor col{reshape(z.re, {n, 1}), reshape(z.im, {n, 1})};
    ComplexTensor prod = complex_matmul(w, col);
    const int m = prod.re.shape()[0];
    return {reshape(prod.re, {m}), reshape(prod.im, {m})};
}

ComplexTensor crelu(const ComplexTensor& z) { return {relu(z.re), relu(z.im)}; }

ComplexTensor wirtinger_grad(const Tape& tape, const ComplexTensor& w) {
    return {tape.grad(w.re), tape.grad(w.im)};
}

}  // namespace gridflux::ad
