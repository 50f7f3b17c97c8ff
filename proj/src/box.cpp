#include "catbox/box.hpp"

#include <stdexcept>

namespace catbox {

namespace {

constexpr std::array<std::string_view, 6> kEventNames{"prepare", "select_h", "select_s",
                                                      "measure", "lid_open", "lid_close"};

Led led_for(std::optional<ObservableId> selected) {
    if (!selected) return Led::Off;
    return *selected == ObservableId::S ? Led::Green : Led::White;
}

MessageId outcome_message(ObservableId id, std::size_t k) {
    if (id == ObservableId::H) return k == 0 ? MessageId::OutcomeDead : MessageId::OutcomeAlive;
    return k == 0 ? MessageId::OutcomePlus : MessageId::OutcomeMinus;
}

MessageId state_message(ObservableId id, std::size_t k) {
    if (id == ObservableId::H) return k == 0 ? MessageId::StateDead : MessageId::StateAlive;
    return k == 0 ? MessageId::StatePlus : MessageId::StateMinus;
}

}  // namespace

std::string_view event_name(Event e) { return kEventNames[static_cast<std::size_t>(e)]; }

std::optional<Event> parse_event_name(std::string_view name) {
    for (Event e : kAllEvents) {
        if (event_name(e) == name) return e;
    }
    return std::nullopt;
}

std::string_view led_name(Led led) {
    switch (led) {
        case Led::White: return "white";
        case Led::Green: return "green";
        case Led::Off: break;
    }
    return "off";
}

std::string_view lid_name(Lid lid) { return lid == Lid::Open ? "open" : "closed"; }

const Observable& observable_for(ObservableId id) {
    return id == ObservableId::H ? observable_H() : observable_S();
}

MessageId describe_cat(const DensityMatrix& cat) {
    for (ObservableId id : {ObservableId::H, ObservableId::S}) {
        if (auto k = eigenstate_index(cat, observable_for(id))) return state_message(id, *k);
    }
    // Every cat the box holds was prepared as |+> or collapsed onto an H/S eigenstate.
    throw std::logic_error("box cat is not an eigenstate of H or S");
}

struct BoxOps {
    static void log(BoxState& box, Event e, StepResult result) {
        const MessageId shown = box.display_.back();
        box.log_.push_back(LogEntry{box.log_.size(), e, std::move(result), shown});
    }

    static void reject(BoxState& box, Event e, MessageId reason) {
        box.display_ = {reason};
        log(box, e, Rejected{reason});
    }

    static void select(BoxState& box, ObservableId id) {
        box.selected_ = id;
        box.led_ = led_for(id);
        box.display_ = {id == ObservableId::H ? MessageId::SelectedH : MessageId::SelectedS};
    }

    static void measure_selected(BoxState& box, Event e) {
        const ObservableId id = *box.selected_;
        auto [record, next] = measure(*box.cat_, observable_for(id), box.rng_);
        box.rng_ = next;
        box.cat_ = record.post_state;
        box.display_ = {outcome_message(id, record.outcome_index),
                        state_message(id, record.outcome_index)};
        log(box, e, std::move(record));
    }
};

BoxState new_box(std::uint64_t seed) {
    BoxState box;
    box.rng_ = RngStream{seed};
    box.seed_ = seed;
    return box;
}

BoxState step(BoxState box, Event e) {
    switch (e) {
        case Event::Prepare:
            if (box.lid_ == Lid::Open) {
                BoxOps::reject(box, e, MessageId::RejectLidOpen);
                break;
            }
            box.cat_ = density_of(prepare_cat(0.0));
            box.display_ = {MessageId::Plus};
            BoxOps::log(box, e, Accepted{});
            break;

        case Event::SelectH:
        case Event::SelectS:
            if (box.lid_ == Lid::Open) {
                BoxOps::reject(box, e, MessageId::RejectLidOpen);
                break;
            }
            BoxOps::select(box, e == Event::SelectH ? ObservableId::H : ObservableId::S);
            BoxOps::log(box, e, Accepted{});
            break;

        case Event::Measure:
            if (!box.cat_) {
                BoxOps::reject(box, e, MessageId::RejectNoCat);
            } else if (!box.selected_) {
                BoxOps::reject(box, e, MessageId::RejectNoSelection);
            } else {
                BoxOps::measure_selected(box, e);
            }
            break;

        case Event::LidOpen:
            box.lid_ = Lid::Open;
            if (box.cat_) {
                // Opening the box forces the dead/alive measurement.
                BoxOps::select(box, ObservableId::H);
                BoxOps::log(box, e, Accepted{});
                BoxOps::measure_selected(box, e);
            } else {
                box.display_ = {MessageId::LidOpen};
                BoxOps::log(box, e, Accepted{});
            }
            break;

        case Event::LidClose:
            box.lid_ = Lid::Closed;
            box.display_ = {box.cat_ ? describe_cat(*box.cat_) : MessageId::Idle};
            BoxOps::log(box, e, Accepted{});
            break;
    }
    return box;
}

PanelView render(const BoxState& box, const MessageCatalog& catalog) {
    PanelView view;
    view.display = box.display();
    for (std::size_t i = 0; i < view.display.size(); ++i) {
        if (i > 0) view.display_text += '\n';
        view.display_text += catalog.text(view.display[i]);
    }
    view.led = box.led();
    view.lid = box.lid();
    view.cat_present = box.cat().has_value();
    view.selected = box.selected();
    view.prepare_enabled = box.lid() == Lid::Closed;
    view.select_enabled = box.lid() == Lid::Closed;
    view.measure_enabled = box.cat().has_value() && box.selected().has_value();
    return view;
}

}  // namespace catbox
