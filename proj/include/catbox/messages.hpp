#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace catbox {

enum class MessageId {
    Idle,
    Plus,
    SelectedH,
    SelectedS,
    OutcomeDead,
    OutcomeAlive,
    OutcomePlus,
    OutcomeMinus,
    StateDead,
    StateAlive,
    StatePlus,
    StateMinus,
    LidOpen,
    RejectLidOpen,
    RejectNoCat,
    RejectNoSelection,
};

inline constexpr std::size_t kMessageCount = 16;

// Stable key such as "MSG_IDLE" or "REJECT_NO_CAT".
std::string_view message_key(MessageId id);
std::optional<MessageId> parse_message_key(std::string_view key);

// Display text per message id. English defaults; a UTF-8 `key=value` file
// overrides individual entries ('#' starts a comment line).
class MessageCatalog {
public:
    MessageCatalog();

    // Throws std::runtime_error naming the line on malformed input or unknown keys.
    static MessageCatalog load(const std::filesystem::path& path);
    static MessageCatalog parse(std::string_view text);

    const std::string& text(MessageId id) const { return texts_[static_cast<std::size_t>(id)]; }
    void set(MessageId id, std::string text) { texts_[static_cast<std::size_t>(id)] = std::move(text); }

private:
    std::array<std::string, kMessageCount> texts_;
};

// --catalog flag, then $CATBOX_CATALOG, then the built-in defaults.
MessageCatalog resolve_catalog(const std::optional<std::filesystem::path>& flag);

}  // namespace catbox
