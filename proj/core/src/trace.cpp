#include <sstream>

#include "adlv/checker.hpp"

namespace adlv {

std::string format_trace(const Checker& checker, const Trace& trace) {
  const auto vars = checker.var_names();
  const auto clocks = checker.clock_names();
  const auto& net = checker.network();
  std::ostringstream os;
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const auto& step = trace.steps[k];
    os << k << ". " << step.label << "\n";
    if (k == 0) {
      os << "   locations:";
      for (std::size_t a = 0; a < step.state.locations.size(); ++a)
        os << " " << net.automata[a].name << "."
           << net.automata[a].locations[step.state.locations[a]].name;
      os << "\n";
      for (std::size_t i = 0; i < vars.size(); ++i)
        os << "   " << vars[i] << " = " << step.state.vars[i] << "\n";
    } else {
      const auto& prev = trace.steps[k - 1].state;
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (prev.vars[i] != step.state.vars[i])
          os << "   " << vars[i] << ": " << prev.vars[i] << " -> " << step.state.vars[i] << "\n";
    }
    if (step.state.zone.clocks() > 0) os << "   zone: " << step.state.zone.to_string(clocks) << "\n";
  }
  if (trace.loop_start) os << "   loops back to step " << *trace.loop_start << "\n";
  return os.str();
}

}  // namespace adlv
