#pragma once
// Timestamped event log shared by every scheduling policy; all metrics are
// pure functions of this trace.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sos {

enum class EventKind : std::uint8_t {
  created,   // job emitted by the workload generator
  admitted,  // job left the input FIFO and entered the scheduler
  assigned,  // machine chosen (same tick as admitted for the SOS engine)
  released,  // job left the virtual schedule for the machine's actual queue
  enqueued,  // job appended to a machine's execution queue
  completed, // execution finished
  stolen,    // job migrated to an idle machine (work-stealing baselines)
};

struct TraceEvent {
  std::uint64_t tick = 0;
  EventKind kind = EventKind::created;
  std::uint32_t job_id = 0;
  std::int32_t machine = -1;  // -1 when no machine applies
};

struct SimTrace {
  std::vector<TraceEvent> events;

  void add(std::uint64_t tick, EventKind kind, std::uint32_t job,
           std::int32_t machine = -1) {
    events.push_back({tick, kind, job, machine});
  }
  bool empty() const { return events.empty(); }
};

std::string to_string(EventKind k);
EventKind event_kind_from_string(const std::string& s);

// CSV round trip: header "tick,kind,job,machine".
void write_trace_csv(const SimTrace& trace, std::ostream& os);
SimTrace read_trace_csv(std::istream& is);

}  // namespace sos
