#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace twoway::ld {

/// Fixed-length binary column vector over GF(2). Index 0 is the
/// most-significant signal level; addition is bitwise XOR.
class GF2Vector {
 public:
  GF2Vector() = default;
  explicit GF2Vector(std::size_t n) : bits_(n, 0) {}
  GF2Vector(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits) bits_.push_back(static_cast<std::uint8_t>(b & 1));
  }

  std::size_t size() const { return bits_.size(); }
  std::uint8_t get(std::size_t i) const { return bits_.at(i); }
  void set(std::size_t i, int v) { bits_.at(i) = static_cast<std::uint8_t>(v & 1); }

  bool is_zero() const {
    for (auto b : bits_)
      if (b) return false;
    return true;
  }

  friend GF2Vector operator^(const GF2Vector& a, const GF2Vector& b);
  GF2Vector& operator^=(const GF2Vector& b) { return *this = *this ^ b; }

  friend bool operator==(const GF2Vector& a, const GF2Vector& b) {
    return a.bits_ == b.bits_;
  }
  friend bool operator!=(const GF2Vector& a, const GF2Vector& b) {
    return !(a == b);
  }
  friend bool operator<(const GF2Vector& a, const GF2Vector& b) {
    return a.bits_ < b.bits_;
  }

  /// MSB-first, e.g. "101".
  std::string str() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s += b ? '1' : '0';
    return s;
  }

  static GF2Vector from_str(const std::string& s);

  /// Value of the bits read MSB-first, for indexing truth tables.
  unsigned to_uint() const {
    unsigned v = 0;
    for (auto b : bits_) v = (v << 1) | b;
    return v;
  }
  static GF2Vector from_uint(unsigned v, std::size_t n);

 private:
  std::vector<std::uint8_t> bits_;
};

/// Linear deterministic network: node set plus integer bit-level gains n_jk.
/// An absent (j,k) pair means no link; an explicit zero gain is a link that
/// delivers nothing (S^N x = 0). Self links (j,j) are allowed and enter
/// output formation like any other link.
struct LDNetwork {
  std::set<int> nodes;
  std::map<std::pair<int, int>, int> gains;
  int N = 0;  // ambient dimension, max over gains

  LDNetwork() = default;
  LDNetwork(std::set<int> nodes_, std::map<std::pair<int, int>, int> gains_);

  bool has_link(int j, int k) const { return gains.count({j, k}) > 0; }
  int gain(int j, int k) const;  // throws if absent

  /// Transmitters with a link into k (including k itself for self links).
  std::vector<int> senders_into(int k) const;

  std::string to_json() const;
  static LDNetwork from_json(const std::string& text);
};

/// S^(N-n) x: keeps the top n bits of x, landing them in the bottom n
/// positions, zero fill above. Requires 0 <= n <= N and len(x) == N.
GF2Vector shift_apply(const GF2Vector& x, int n, int N);

/// Y_k = XOR over links (j,k) of S^(N-n_jk) X_j. Every linked transmitter
/// must supply an input of length N.
GF2Vector channel_output(const LDNetwork& net,
                         const std::map<int, GF2Vector>& inputs, int k);

/// y XOR S^(N-n_kk) own_input when the (k,k) link exists; identity otherwise.
GF2Vector cancel_self_interference(const LDNetwork& net, int k,
                                   const GF2Vector& y,
                                   const GF2Vector& own_input);

}  // namespace twoway::ld
