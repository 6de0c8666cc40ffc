#include "mesonet/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace mesonet {

BitWindow::BitWindow(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::runtime_error("window capacity must be >= 1");
  ring_.assign(capacity_, 0);
}

void BitWindow::push_bit(int bit) {
  if (bit != 0 && bit != 1) throw std::runtime_error("bit must be 0 or 1");
  if (count_ < capacity_) {
    ring_[count_++] = static_cast<uint8_t>(bit);
  } else {
    ring_[head_] = static_cast<uint8_t>(bit);
    head_ = (head_ + 1) % capacity_;
  }
}

std::vector<uint8_t> BitWindow::bits() const {
  std::vector<uint8_t> out;
  out.reserve(count_);
  if (count_ < capacity_) {
    out.assign(ring_.begin(), ring_.begin() + count_);
  } else {
    for (int i = 0; i < capacity_; ++i)
      out.push_back(ring_[(head_ + i) % capacity_]);
  }
  return out;
}

double BitWindow::prr() const {
  if (count_ == 0) throw std::runtime_error("prr of an empty window");
  int ones = 0;
  for (int i = 0; i < count_; ++i) ones += ring_[i];
  return static_cast<double>(ones) / count_;
}

double BitWindow::etx() const {
  double p = prr();
  double cap = capacity_ + 1.0;
  if (p <= 0.0) return cap;
  return std::min(1.0 / p, cap);
}

double BitWindow::rnp() const {
  if (count_ == 0) throw std::runtime_error("rnp of an empty window");
  auto ordered = bits();
  int attempts = 0, successes = 0, spent = 0;
  for (uint8_t b : ordered) {
    ++attempts;
    if (b) {
      spent += attempts;
      attempts = 0;
      ++successes;
    }
  }
  if (successes == 0) return static_cast<double>(capacity_);
  return static_cast<double>(spent) / successes;
}

BitWindow BitWindow::from_bits(const std::vector<uint8_t>& bits, int capacity) {
  BitWindow w(capacity);
  for (uint8_t b : bits) w.push_bit(b);
  return w;
}

LinkEstimate estimate_link(const BitWindow& w) {
  return {w.prr(), w.rnp()};
}

int LinkBeaconLog::ticks_before(double t) const {
  if (outcomes_.empty() || t < t0_) return 0;
  int n = static_cast<int>(std::floor((t - t0_) / period_ + 1e-9)) + 1;
  return std::min(n, size());
}

BitWindow LinkBeaconLog::window_as_of(double t) const {
  BitWindow w(capacity_);
  int upto = ticks_before(t);
  int from = std::max(0, upto - capacity_);
  for (int i = from; i < upto; ++i) w.push_bit(outcomes_[i]);
  return w;
}

LoraFeature lora_feature(const LoraPathEstimate& est, double now_s,
                         double validity_s) {
  if (!est.has_sample || now_s - est.last_ack_t > validity_s)
    return {kRssiSentinelDbm, true};
  return {est.rssi_dbm, false};
}

}  // namespace mesonet
