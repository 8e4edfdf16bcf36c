#include "twoway/gf2.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace twoway::ld {

GF2Vector operator^(const GF2Vector& a, const GF2Vector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("GF2Vector xor: length " +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  GF2Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r.bits_[i] = a.bits_[i] ^ b.bits_[i];
  return r;
}

GF2Vector GF2Vector::from_str(const std::string& s) {
  GF2Vector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1')
      throw std::invalid_argument("GF2Vector: bad bit char");
    v.bits_[i] = s[i] == '1';
  }
  return v;
}

GF2Vector GF2Vector::from_uint(unsigned v, std::size_t n) {
  GF2Vector x(n);
  for (std::size_t i = 0; i < n; ++i)
    x.bits_[n - 1 - i] = (v >> i) & 1u;
  return x;
}

LDNetwork::LDNetwork(std::set<int> nodes_,
                     std::map<std::pair<int, int>, int> gains_)
    : nodes(std::move(nodes_)), gains(std::move(gains_)) {
  for (const auto& [jk, n] : gains) {
    if (n < 0) throw std::invalid_argument("LDNetwork: negative gain");
    if (!nodes.count(jk.first) || !nodes.count(jk.second))
      throw std::invalid_argument("LDNetwork: gain references unknown node");
    N = std::max(N, n);
  }
}

int LDNetwork::gain(int j, int k) const {
  auto it = gains.find({j, k});
  if (it == gains.end())
    throw std::invalid_argument("LDNetwork: no link " + std::to_string(j) +
                                "->" + std::to_string(k));
  return it->second;
}

std::vector<int> LDNetwork::senders_into(int k) const {
  std::vector<int> out;
  for (const auto& [jk, n] : gains)
    if (jk.second == k) out.push_back(jk.first);
  std::sort(out.begin(), out.end());
  return out;
}

std::string LDNetwork::to_json() const {
  nlohmann::json j;
  j["N"] = N;
  nlohmann::json g = nlohmann::json::object();
  for (const auto& [jk, n] : gains)
    g[std::to_string(jk.first) + "," + std::to_string(jk.second)] = n;
  j["gains"] = g;
  return j.dump(2);
}

LDNetwork LDNetwork::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::map<std::pair<int, int>, int> gains;
  std::set<int> nodes;
  for (auto it = j.at("gains").begin(); it != j.at("gains").end(); ++it) {
    const std::string& key = it.key();
    auto comma = key.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("LDNetwork json: gain key must be \"j,k\"");
    int a = std::stoi(key.substr(0, comma));
    int b = std::stoi(key.substr(comma + 1));
    gains[{a, b}] = it->get<int>();
    nodes.insert(a);
    nodes.insert(b);
  }
  LDNetwork net(nodes, gains);
  if (j.contains("N") && j["N"].get<int>() != net.N)
    throw std::invalid_argument("LDNetwork json: N does not match max gain");
  return net;
}

GF2Vector shift_apply(const GF2Vector& x, int n, int N) {
  if (n < 0 || n > N)
    throw std::invalid_argument("shift_apply: gain " + std::to_string(n) +
                                " outside [0," + std::to_string(N) + "]");
  if (static_cast<int>(x.size()) != N)
    throw std::invalid_argument("shift_apply: vector length " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(N));
  GF2Vector y(static_cast<std::size_t>(N));
  for (int t = 0; t < n; ++t) y.set(static_cast<std::size_t>(N - n + t), x.get(static_cast<std::size_t>(t)));
  return y;
}

GF2Vector channel_output(const LDNetwork& net,
                         const std::map<int, GF2Vector>& inputs, int k) {
  GF2Vector y(static_cast<std::size_t>(net.N));
  for (int j : net.senders_into(k)) {
    auto it = inputs.find(j);
    if (it == inputs.end())
      throw std::invalid_argument("channel_output: missing input for node " +
                                  std::to_string(j) + " linked into " +
                                  std::to_string(k));
    y ^= shift_apply(it->second, net.gain(j, k), net.N);
  }
  return y;
}

GF2Vector cancel_self_interference(const LDNetwork& net, int k,
                                   const GF2Vector& y,
                                   const GF2Vector& own_input) {
  if (!net.has_link(k, k)) return y;
  return y ^ shift_apply(own_input, net.gain(k, k), net.N);
}

}  // namespace twoway::ld
