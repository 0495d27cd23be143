#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "netlat/error.hpp"

namespace netlat {

/// A permutation of {0, ..., degree-1}; (a * b)(x) = a(b(x)).
class Perm {
public:
  Perm() = default;
  explicit Perm(std::vector<std::uint16_t> images) : img_(std::move(images)) {
    std::vector<bool> hit(img_.size(), false);
    for (auto x : img_) {
      if (x >= img_.size() || hit[x])
        throw Error("not a permutation");
      hit[x] = true;
    }
  }

  static Perm identity(std::size_t degree) {
    Perm p;
    p.img_.resize(degree);
    std::iota(p.img_.begin(), p.img_.end(), std::uint16_t{0});
    return p;
  }

  /// Cycle given on points of {0..degree-1}.
  static Perm cycle(std::size_t degree, const std::vector<std::uint16_t> &c) {
    Perm p = identity(degree);
    for (std::size_t i = 0; i < c.size(); ++i)
      p.img_.at(c[i]) = c[(i + 1) % c.size()];
    return Perm(p.img_);
  }

  std::size_t degree() const noexcept { return img_.size(); }
  std::uint16_t operator()(std::size_t x) const { return img_[x]; }
  const std::vector<std::uint16_t> &images() const { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i)
        return false;
    return true;
  }

  friend Perm operator*(const Perm &a, const Perm &b) {
    Perm r;
    r.img_.resize(b.img_.size());
    for (std::size_t i = 0; i < b.img_.size(); ++i)
      r.img_[i] = a.img_[b.img_[i]];
    return r;
  }

  Perm inverse() const {
    Perm r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i)
      r.img_[img_[i]] = static_cast<std::uint16_t>(i);
    return r;
  }

  std::string key() const {
    std::string s(img_.size() * 2, '\0');
    for (std::size_t i = 0; i < img_.size(); ++i) {
      s[2 * i] = static_cast<char>(img_[i] >> 8);
      s[2 * i + 1] = static_cast<char>(img_[i] & 0xff);
    }
    return s;
  }
  static Perm from_key(const std::string &s) {
    Perm p;
    p.img_.resize(s.size() / 2);
    for (std::size_t i = 0; i < p.img_.size(); ++i)
      p.img_[i] = static_cast<std::uint16_t>(
          (static_cast<unsigned char>(s[2 * i]) << 8) |
          static_cast<unsigned char>(s[2 * i + 1]));
    return p;
  }

  /// Image list, e.g. "[1,0,2]".
  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (i)
        s += ',';
      s += std::to_string(img_[i]);
    }
    return s + "]";
  }

  friend auto operator<=>(const Perm &, const Perm &) = default;

private:
  std::vector<std::uint16_t> img_;
};

} // namespace netlat
