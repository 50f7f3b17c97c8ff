#include "catbox/messages.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace catbox {

namespace {

struct Entry {
    MessageId id;
    std::string_view key;
    std::string_view english;
};

constexpr std::array<Entry, kMessageCount> kEntries{{
    {MessageId::Idle, "MSG_IDLE", "Press PREPARE to start"},
    {MessageId::Plus, "MSG_PLUS", "Cat prepared in the plus state"},
    {MessageId::SelectedH, "MSG_SELECTED_H", "Measuring: dead/alive"},
    {MessageId::SelectedS, "MSG_SELECTED_S", "Measuring: plus/minus"},
    {MessageId::OutcomeDead, "MSG_OUTCOME_DEAD", "Outcome: dead"},
    {MessageId::OutcomeAlive, "MSG_OUTCOME_ALIVE", "Outcome: alive"},
    {MessageId::OutcomePlus, "MSG_OUTCOME_PLUS", "Outcome: +1"},
    {MessageId::OutcomeMinus, "MSG_OUTCOME_MINUS", "Outcome: -1"},
    {MessageId::StateDead, "MSG_STATE_DEAD", "State: |dead>"},
    {MessageId::StateAlive, "MSG_STATE_ALIVE", "State: |alive>"},
    {MessageId::StatePlus, "MSG_STATE_PLUS", "State: |+> = (|dead>+|alive>)/sqrt2"},
    {MessageId::StateMinus, "MSG_STATE_MINUS", "State: |-> = (|dead>-|alive>)/sqrt2"},
    {MessageId::LidOpen, "MSG_LID_OPEN", "Lid open: the box is empty"},
    {MessageId::RejectLidOpen, "REJECT_LID_OPEN", "Close the lid first"},
    {MessageId::RejectNoCat, "REJECT_NO_CAT", "No cat: press PREPARE first"},
    {MessageId::RejectNoSelection, "REJECT_NO_SELECTION", "Select a property to measure"},
}};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::string_view message_key(MessageId id) { return kEntries[static_cast<std::size_t>(id)].key; }

std::optional<MessageId> parse_message_key(std::string_view key) {
    for (const auto& e : kEntries) {
        if (e.key == key) return e.id;
    }
    return std::nullopt;
}

MessageCatalog::MessageCatalog() {
    for (const auto& e : kEntries) texts_[static_cast<std::size_t>(e.id)] = std::string(e.english);
}

MessageCatalog MessageCatalog::parse(std::string_view text) {
    MessageCatalog catalog;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::runtime_error("catalog line " + std::to_string(line_no) + ": expected key=value");
        }
        const auto key = trim(line.substr(0, eq));
        const auto id = parse_message_key(key);
        if (!id) {
            throw std::runtime_error("catalog line " + std::to_string(line_no) + ": unknown key '" +
                                     std::string(key) + "'");
        }
        catalog.set(*id, std::string(trim(line.substr(eq + 1))));
    }
    return catalog;
}

MessageCatalog MessageCatalog::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open message catalog " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

MessageCatalog resolve_catalog(const std::optional<std::filesystem::path>& flag) {
    if (flag) return MessageCatalog::load(*flag);
    if (const char* env = std::getenv("CATBOX_CATALOG"); env != nullptr && *env != '\0') {
        return MessageCatalog::load(env);
    }
    return MessageCatalog{};
}

}  // namespace catbox
