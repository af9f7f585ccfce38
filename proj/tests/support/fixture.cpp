#include "fixture.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "adlv/parser.hpp"
#include "adlv/transform.hpp"

namespace fixture {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string data_path(const std::string& name) { return std::string(ADLV_TEST_DATA_DIR) + "/" + name; }

adlv::FaaModel ssu_model() {
  const auto p = data_path("ssu.adl");
  return adlv::parse_model(read_file(p), p);
}

adlv::Network ssu_network() { return adlv::transform_faa(ssu_model()); }

std::vector<adlv::Query> ssu_queries() {
  const auto p = data_path("ssu.q");
  return adlv::parse_queries(read_file(p), p);
}

std::vector<adlv::Query> ssu_extra_queries() {
  const auto p = data_path("ssu_extra.q");
  return adlv::parse_queries(read_file(p), p);
}

adlv::Network toy_responder(int delay) {
  using namespace adlv;
  Network net;
  net.channels = {"req", "resp"};

  TimedAutomaton r;
  r.name = "Req";
  r.clocks = {"x"};
  r.add_location("Loop", LocationKind::Normal, {{"x", ExprOp::Le, 10}});
  Edge send;
  send.clock_guard = {{"x", ExprOp::Ge, 10}};
  send.action = ChannelAction{"req", true};
  send.resets = {{"x", 0}};
  r.edges.push_back(send);

  TimedAutomaton s;
  s.name = "Resp";
  s.clocks = {"y"};
  s.add_location("Idle");
  s.add_location("Busy", LocationKind::Normal, {{"y", ExprOp::Le, delay}});
  Edge got;
  got.source = 0;
  got.target = 1;
  got.action = ChannelAction{"req", false};
  got.resets = {{"y", 0}};
  s.edges.push_back(got);
  Edge answer;
  answer.source = 1;
  answer.target = 0;
  answer.clock_guard = {{"y", ExprOp::Ge, delay}};
  answer.action = ChannelAction{"resp", true};
  s.edges.push_back(answer);

  net.automata = {r, s};
  return net;
}

}  // namespace fixture
