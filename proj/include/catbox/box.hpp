#pragma once

// The simulated cat box as a deterministic state machine. A BoxState is a
// value; step() consumes one and returns its successor, so callers write
// `box = step(std::move(box), event)`.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "catbox/messages.hpp"
#include "catbox/quantum.hpp"

namespace catbox {

enum class ObservableId { H, S };
enum class Led { Off, White, Green };
enum class Lid { Closed, Open };

enum class Event { Prepare, SelectH, SelectS, Measure, LidOpen, LidClose };

inline constexpr std::array<Event, 6> kAllEvents{Event::Prepare, Event::SelectH, Event::SelectS,
                                                 Event::Measure, Event::LidOpen, Event::LidClose};

// Wire names: "prepare", "select_h", "select_s", "measure", "lid_open", "lid_close".
std::string_view event_name(Event e);
std::optional<Event> parse_event_name(std::string_view name);

std::string_view led_name(Led led);
std::string_view lid_name(Lid lid);

const Observable& observable_for(ObservableId id);

struct Accepted {};
struct Rejected {
    MessageId reason;
};
using StepResult = std::variant<Accepted, Rejected, MeasurementRecord>;

struct LogEntry {
    std::uint64_t seq = 0;
    Event event = Event::Prepare;
    StepResult result;
    MessageId display_after = MessageId::Idle;
};

class BoxState {
public:
    const std::optional<DensityMatrix>& cat() const { return cat_; }
    std::optional<ObservableId> selected() const { return selected_; }
    Led led() const { return led_; }
    Lid lid() const { return lid_; }
    // LCD lines, top to bottom.
    const std::vector<MessageId>& display() const { return display_; }
    RngStream rng() const { return rng_; }
    const std::vector<LogEntry>& log() const { return log_; }
    std::uint64_t seed() const { return seed_; }

private:
    friend BoxState new_box(std::uint64_t seed);
    friend BoxState step(BoxState box, Event e);
    friend struct BoxOps;
    BoxState() = default;

    std::optional<DensityMatrix> cat_;
    std::optional<ObservableId> selected_;
    Led led_ = Led::Off;
    Lid lid_ = Lid::Closed;
    std::vector<MessageId> display_{MessageId::Idle};
    RngStream rng_;
    std::uint64_t seed_ = 0;
    std::vector<LogEntry> log_;
};

BoxState new_box(std::uint64_t seed);

// Never throws for a valid box: rejected presses are logged and displayed.
BoxState step(BoxState box, Event e);

struct PanelView {
    std::vector<MessageId> display;
    std::string display_text;  // lines joined with '\n'
    Led led = Led::Off;
    Lid lid = Lid::Closed;
    bool cat_present = false;
    std::optional<ObservableId> selected;
    bool prepare_enabled = false;
    bool select_enabled = false;
    bool measure_enabled = false;
};

PanelView render(const BoxState& box, const MessageCatalog& catalog = {});

inline const std::vector<LogEntry>& transcript(const BoxState& box) { return box.log(); }

// Message describing the cat's current eigenstate (H basis first, then S).
MessageId describe_cat(const DensityMatrix& cat);

}  // namespace catbox
