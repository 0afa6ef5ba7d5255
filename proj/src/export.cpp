#include "lifo/export.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <vector>

#include <openssl/evp.h>

#include "json.hpp"
#include "lifo/error.hpp"

namespace lifo::io {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error("format_double failed");
  return std::string(buf.data(), end);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr) {
  const int k = tr.params.k;
  out << "step,Y";
  for (int i = 1; i <= k; ++i) out << ",C" << i;
  out << ",C";
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) out << ",D_" << i << '_' << j;
  out << ",f_consumed_depth\n";

  std::size_t next_event = 0;
  for (std::size_t step = 1; step <= tr.n; ++step) {
    out << step << ',' << to_string(tr.y[step - 1]);
    for (int i = 1; i <= k; ++i) out << ',' << tr.count(step, i);
    out << ',' << tr.total(step);
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) out << ',' << tr.discrepancy(step, i, j);
    out << ',';
    if (next_event < tr.flex_events.size() && tr.flex_events[next_event].step == step) {
      const FlexEvent& e = tr.flex_events[next_event++];
      out << (e.from_past ? e.past_depth : 0);
    }
    out << '\n';
  }
}

void write_event_log(std::ostream& out, const Trajectory& tr) {
  for (const FlexEvent& e : tr.flex_events) {
    nlohmann::ordered_json line;
    line["step"] = e.step;
    line["consumed_type"] = e.type;
    line["source"] = e.from_past ? "past" : "window";
    line["past_depth"] = e.from_past ? nlohmann::ordered_json(e.past_depth) : nlohmann::ordered_json(nullptr);
    out << line.dump() << '\n';
  }
}

void write_estimates_csv(std::ostream& out, std::span<const EstimateRow> rows) {
  out << "quantity,k,p,n,value,stderr,trials,truncated_mass\n";
  for (const EstimateRow& r : rows) {
    out << r.quantity << ',' << r.k << ',' << format_double(r.p) << ',' << r.n << ','
        << format_double(r.estimate.value) << ',' << format_double(r.estimate.std_error) << ','
        << r.estimate.trials << ',' << format_double(r.estimate.truncated_mass) << '\n';
  }
}

namespace {

std::string to_hex(const unsigned char* data, unsigned len) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kDigits[data[i] >> 4]);
    out.push_back(kDigits[data[i] & 15]);
  }
  return out;
}

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) throw Error("sha256 init failed");
  }
  ~Sha256() { EVP_MD_CTX_free(ctx_); }
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(const void* data, std::size_t len) {
    if (EVP_DigestUpdate(ctx_, data, len) != 1) throw Error("sha256 update failed");
  }
  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned len = 0;
    if (EVP_DigestFinal_ex(ctx_, md.data(), &len) != 1) throw Error("sha256 final failed");
    return to_hex(md.data(), len);
  }

 private:
  EVP_MD_CTX* ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  Sha256 h;
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

}  // namespace lifo::io
