#include "densitylab/branch.hpp"

#include <algorithm>
#include <numeric>

namespace densitylab {

namespace {

void check_bits(const std::string& bits, const char* what) {
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw DomainError(std::string(what) + " may contain only '0' and '1'");
    }
  }
}

// Shortest string whose repetition produces `cycle`.
std::string primitive_cycle(const std::string& cycle) {
  const std::size_t n = cycle.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool repeats = true;
    for (std::size_t i = p; i < n && repeats; ++i) {
      repeats = cycle[i] == cycle[i % p];
    }
    if (repeats) return cycle.substr(0, p);
  }
  return cycle;
}

}  // namespace

Branch::Branch(std::string head, std::string cycle) {
  check_bits(head, "branch head");
  check_bits(cycle, "branch cycle");
  if (cycle.empty()) throw DomainError("branch cycle must be nonempty");
  cycle = primitive_cycle(cycle);
  // Absorb trailing head bits that replicate the tail of the cycle: rotating
  // the cycle right by one swallows one head bit without changing the
  // sequence. The result is the unique shortest (head, primitive cycle) pair.
  while (!head.empty() && head.back() == cycle.back()) {
    head.pop_back();
    cycle.insert(cycle.begin(), cycle.back());
    cycle.pop_back();
  }
  head_ = std::move(head);
  cycle_ = std::move(cycle);
}

Branch Branch::parse(const std::string& text) {
  const auto bar = text.find('|');
  if (bar == std::string::npos) {
    throw DomainError("branch literal must look like head|cycle");
  }
  return Branch(text.substr(0, bar), text.substr(bar + 1));
}

bool Branch::bit(unsigned long i) const {
  if (i < 1) throw DomainError("branch bits are indexed from 1");
  if (i <= head_.size()) return head_[i - 1] == '1';
  const unsigned long j = (i - head_.size() - 1) % cycle_.size();
  return cycle_[j] == '1';
}

Int Branch::prefix_code(unsigned long len) const {
  if (len < 1) throw DomainError("prefix length must be >= 1");
  Int code = 1;
  for (unsigned long i = 1; i <= len; ++i) {
    code <<= 1;
    if (bit(i)) code += 1;
  }
  return code;
}

unsigned long Branch::common_prefix_length(const Branch& other) const {
  // Two eventually periodic sequences agreeing through max(head) + lcm(cycles)
  // agree everywhere.
  const unsigned long span =
      std::max(head_.size(), other.head_.size()) +
      std::lcm(cycle_.size(), other.cycle_.size()) + 1;
  for (unsigned long i = 1; i <= span; ++i) {
    if (bit(i) != other.bit(i)) return i - 1;
  }
  throw DomainError("branches are equal; no finite common prefix");
}

bool Branch::is_scaled_code(const Int& n, const Int& multiplier) const {
  if (n < 2 || multiplier < 1) return false;
  if (n % multiplier != 0) return false;
  const Int q = n / multiplier;
  if (q < 2) return false;
  const std::size_t len = bit_length(q) - 1;  // q in [2^len, 2^{len+1})
  return prefix_code(len) == q;
}

std::strong_ordering Branch::operator<=>(const Branch& other) const {
  if (auto c = head_ <=> other.head_; c != 0) return c;
  return cycle_ <=> other.cycle_;
}

}  // namespace densitylab
