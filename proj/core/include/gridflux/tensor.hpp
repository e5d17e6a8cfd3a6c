#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace gridflux::ad {

class Tape;

/// Dense f64 array of rank 0..2. Values are immutable once the tensor has
/// been fed into a tape operation; copies share storage.
class Tensor {
  public:
    Tensor() = default;
    Tensor(std::vector<int> shape, std::vector<double> data);

    static Tensor zeros(std::vector<int> shape);
    static Tensor full(std::vector<int> shape, double value);
    static Tensor scalar(double value);
    static Tensor vector(std::vector<double> values);

    const std::vector<int>& shape() const { return shape_; }
    int rank() const { return static_cast<int>(shape_.size()); }
    int size() const;
    int rows() const;  // leading dimension (1 for scalars)
    int cols() const;  // trailing dimension (1 for vectors/scalars)

    std::span<const double> data() const;
    /// Mutable storage. Mutating a tensor already recorded on a tape
    /// invalidates that tape's backward pass; only touch leaves between steps.
    std::vector<double>& raw();
    double item() const;
    double at(int i) const;
    double at(int i, int j) const;

    Tensor clone() const;
    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

    bool on_tape() const { return tape_ != nullptr; }
    bool requires_grad() const { return requires_grad_; }
    Tape* tape() const { return tape_; }
    int node() const { return node_; }

  private:
    friend class Tape;
    std::vector<int> shape_;
    std::shared_ptr<std::vector<double>> data_;
    Tape* tape_ = nullptr;
    int node_ = -1;
    bool requires_grad_ = false;
};

/// Reverse-mode tape. Operations append nodes in topological order; backward
/// walks them once in reverse. A tape is single-owner and single-use.
class Tape {
  public:
    Tape() = default;
    Tape(const Tape&) = delete;
    Tape& operator=(const Tape&) = delete;

    /// Registers `value` as a differentiable leaf and returns the taped view.
    Tensor watch(const Tensor& value);

    /// Reverse accumulation from a scalar loss. Consumes the tape: recording
    /// further operations or running backward again is rejected.
    void backward(const Tensor& loss);
    bool consumed() const { return consumed_; }

    /// Gradient of the loss w.r.t. a watched leaf (zeros if unreached).
    Tensor grad(const Tensor& leaf) const;

    int num_nodes() const { return static_cast<int>(nodes_.size()); }

    // --- internal API used by the primitive implementations ---
    using BackwardFn = std::function<void(std::span<const double> out_grad, Tape&)>;
    int emit(int size, BackwardFn back);
    std::vector<double>& grad_buffer(int node);
    void bind(Tensor& t, int node) {
        t.tape_ = this;
        t.node_ = node;
        t.requires_grad_ = true;
    }

  private:
    struct Node {
        int size;
        BackwardFn back;
    };
    std::vector<Node> nodes_;
    std::vector<std::vector<double>> grads_;
    bool consumed_ = false;
};

// ---------------------------------------------------------------------------
// Primitives. Each computes the forward value and, when an operand lives on a
// tape, records the matching backward rule. Mixing tensors from two different
// tapes is an error; all-constant inputs fold eagerly.
// ---------------------------------------------------------------------------

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor div(const Tensor& a, const Tensor& b);
Tensor neg(const Tensor& a);
Tensor scale(const Tensor& a, double c);
Tensor add_scalar(const Tensor& a, double c);

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor relu(const Tensor& a);
Tensor square(const Tensor& a);
Tensor sqrt(const Tensor& a);
Tensor sin(const Tensor& a);
Tensor cos(const Tensor& a);
Tensor atan2(const Tensor& y, const Tensor& x);

Tensor mean(const Tensor& a);
Tensor sum(const Tensor& a);

Tensor reshape(const Tensor& a, std::vector<int> shape);
Tensor concat_cols(const Tensor& a, const Tensor& b);
Tensor slice_cols(const Tensor& a, int begin, int end);

/// (c,) -> (rows, c): repeats a vector as every row. Backward sums over rows.
Tensor tile_rows(const Tensor& v, int rows);
/// (n,) -> (n, cols): repeats a vector as every column. Backward sums over cols.
Tensor tile_cols(const Tensor& v, int cols);

/// Row gather: out[r] = x[index[r]]. Backward scatters.
Tensor gather(const Tensor& x, const std::vector<int>& index);
/// Segment sum: out[index[r]] += values[r]. Backward gathers.
Tensor scatter_sum(const Tensor& values, const std::vector<int>& index, int out_size);

// ---------------------------------------------------------------------------
// Complex pairing. A complex tensor is an explicit (re, im) pair of real
// tensors; every complex operation decomposes into real primitives, so the
// conjugate-Wirtinger gradient is just ordinary backprop per channel.
// ---------------------------------------------------------------------------

struct ComplexTensor {
    Tensor re;
    Tensor im;

    static ComplexTensor from_real(const Tensor& x) {
        return {x, Tensor::zeros(x.shape())};
    }
    bool same_shape(const ComplexTensor& o) const {
        return re.same_shape(o.re) && im.same_shape(o.im);
    }
};

ComplexTensor cadd(const ComplexTensor& a, const ComplexTensor& b);
/// (m,k) x (k,n) complex product as four real matmuls:
/// re = Ar*Br - Ai*Bi, im = Ar*Bi + Ai*Br.
ComplexTensor complex_matmul(const ComplexTensor& a, const ComplexTensor& b);
/// w (m,n) applied to a complex vector z (n,): (W_r x - W_i y) + i(W_r y + W_i x).
ComplexTensor complex_matvec(const ComplexTensor& w, const ComplexTensor& z);
/// Component-wise activation sigma(z) = relu(x) + i relu(y).
ComplexTensor crelu(const ComplexTensor& z);

/// dL/dW_r + i dL/dW_i for a real-valued loss, i.e. the conjugate-Wirtinger
/// steepest-descent direction 2 dL/d(conj W). Requires backward() to have run.
ComplexTensor wirtinger_grad(const Tape& tape, const ComplexTensor& w);

}  // namespace gridflux::ad
