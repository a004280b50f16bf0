#include "sos/trace.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "sos/errors.hpp"

namespace sos {

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::created: return "created";
    case EventKind::admitted: return "admitted";
    case EventKind::assigned: return "assigned";
    case EventKind::released: return "released";
    case EventKind::enqueued: return "enqueued";
    case EventKind::completed: return "completed";
    case EventKind::stolen: return "stolen";
  }
  return "?";
}

EventKind event_kind_from_string(const std::string& s) {
  if (s == "created") return EventKind::created;
  if (s == "admitted") return EventKind::admitted;
  if (s == "assigned") return EventKind::assigned;
  if (s == "released") return EventKind::released;
  if (s == "enqueued") return EventKind::enqueued;
  if (s == "completed") return EventKind::completed;
  if (s == "stolen") return EventKind::stolen;
  throw IoError("unknown trace event kind: " + s);
}

void write_trace_csv(const SimTrace& trace, std::ostream& os) {
  os << "tick,kind,job,machine\n";
  for (const TraceEvent& e : trace.events) {
    os << e.tick << ',' << to_string(e.kind) << ',' << e.job_id << ','
       << e.machine << '\n';
  }
}

SimTrace read_trace_csv(std::istream& is) {
  SimTrace trace;
  std::string line;
  if (!std::getline(is, line)) throw IoError("trace csv: missing header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tick_s, kind_s, job_s, machine_s;
    if (!std::getline(ss, tick_s, ',') || !std::getline(ss, kind_s, ',') ||
        !std::getline(ss, job_s, ',') || !std::getline(ss, machine_s)) {
      throw IoError("trace csv: malformed row: " + line);
    }
    TraceEvent e;
    e.tick = std::stoull(tick_s);
    e.kind = event_kind_from_string(kind_s);
    e.job_id = static_cast<std::uint32_t>(std::stoul(job_s));
    e.machine = static_cast<std::int32_t>(std::stol(machine_s));
    trace.events.push_back(e);
  }
  return trace;
}

}  // namespace sos
