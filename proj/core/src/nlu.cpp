#include "deliver/nlu.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "deliver/error.hpp"

namespace deliver {

namespace {

constexpr std::array<std::string_view, 5> kVerbs{"bring", "take", "deliver", "carry", "move"};
constexpr std::array<std::string_view, 3> kArticles{"a", "an", "the"};

bool is_article(std::string_view w) {
  return std::find(kArticles.begin(), kArticles.end(), w) != kArticles.end();
}

std::vector<std::string> tokenize(std::string_view text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  for (char ch : text) {
    const auto uch = static_cast<unsigned char>(ch);
    if (std::isalnum(uch) || ch == '\'' || ch == '-') {
      cleaned.push_back(static_cast<char>(std::tolower(uch)));
    } else {
      cleaned.push_back(' ');
    }
  }
  std::vector<std::string> words;
  std::istringstream in(cleaned);
  for (std::string w; in >> w;) {
    if (!is_article(w)) words.push_back(std::move(w));
  }
  return words;
}

std::string join(const std::vector<std::string>& words, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (!out.empty()) out.push_back(' ');
    out += words[i];
  }
  return out;
}

std::string normalize_item(std::string_view item) {
  auto words = tokenize(item);
  return join(words, 0, words.size());
}

void strip_fillers(std::vector<std::string>& words) {
  static constexpr std::array<std::string_view, 3> kModal{"can", "could", "would"};
  bool changed = true;
  while (changed && !words.empty()) {
    changed = false;
    if (words.front() == "please") {
      words.erase(words.begin());
      changed = true;
    } else if (words.size() >= 2 && words[1] == "you" &&
               std::find(kModal.begin(), kModal.end(), words.front()) != kModal.end()) {
      words.erase(words.begin(), words.begin() + 2);
      changed = true;
    }
  }
  while (!words.empty() && words.back() == "please") words.pop_back();
}

TaskSpec make_task(std::string_view text, const SemanticMap& map, std::string_view pickup_name,
                   std::string_view drop_name, std::string item) {
  const Zone* pickup = map.find(pickup_name);
  if (pickup == nullptr) throw Error(Errc::UnknownZone, "'" + std::string(pickup_name) + "'");
  const Zone* drop = map.find(drop_name);
  if (drop == nullptr) throw Error(Errc::UnknownZone, "'" + std::string(drop_name) + "'");

  TaskSpec task{pickup->anchor,
                drop->anchor,
                std::move(item),
                std::string(text),
                normalize_zone_name(pickup->name),
                normalize_zone_name(drop->name)};
  if (task.pickup_zone == task.drop_zone) {
    throw Error(Errc::SameZone, "pickup and drop are both '" + pickup->name + "'");
  }
  return validate_task(task, map.workspace());
}

struct Endpoint {
  std::string base;  // scheme://host[:port]
  std::string path;
};

Endpoint split_url(const std::string& url) {
  constexpr std::string_view kScheme = "http://";
  if (url.rfind(kScheme, 0) != 0) {
    throw Error(Errc::InvalidInterpreterConfig, "endpoint must be an http:// URL: " + url);
  }
  const auto slash = url.find('/', kScheme.size());
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

void InterpreterConfig::validate() const {
  const bool has_endpoint = endpoint.has_value() && !endpoint->empty();
  if ((mode == InterpreterMode::External) != has_endpoint) {
    throw Error(Errc::InvalidInterpreterConfig,
                mode == InterpreterMode::External ? "external mode requires an endpoint"
                                                  : "an endpoint is only valid in external mode");
  }
  if (timeout.count() <= 0) throw Error(Errc::InvalidInterpreterConfig, "timeout must be positive");
}

TaskSpec parse_command(std::string_view text, const SemanticMap& map) {
  std::vector<std::string> words = tokenize(text);
  strip_fillers(words);
  if (words.empty()) throw Error(Errc::UnparsableCommand, "empty command");

  if (std::find(kVerbs.begin(), kVerbs.end(), words.front()) == kVerbs.end()) {
    throw Error(Errc::UnparsableCommand, "unknown verb '" + words.front() + "'");
  }
  std::size_t first = 1;
  if (first < words.size() && (words[first] == "me" || words[first] == "us")) ++first;

  const auto from = std::find(words.begin() + static_cast<std::ptrdiff_t>(first), words.end(), "from");
  if (from == words.end()) throw Error(Errc::UnparsableCommand, "missing 'from <zone>'");
  const auto from_idx = static_cast<std::size_t>(from - words.begin());

  std::size_t to_idx = words.size();
  for (std::size_t i = words.size(); i-- > from_idx + 1;) {
    if (words[i] == "to") {
      to_idx = i;
      break;
    }
  }
  if (to_idx == words.size()) throw Error(Errc::UnparsableCommand, "missing 'to <zone>'");
  if (from_idx == first || to_idx == from_idx + 1 || to_idx + 1 == words.size()) {
    throw Error(Errc::UnparsableCommand, "empty item or zone in '" + std::string(text) + "'");
  }

  return make_task(text, map, join(words, from_idx + 1, to_idx), join(words, to_idx + 1, words.size()),
                   join(words, first, from_idx));
}

TaskSpec interpret_external(std::string_view text, const SemanticMap& map,
                            const InterpreterConfig& config) {
  config.validate();
  if (config.mode != InterpreterMode::External) {
    throw Error(Errc::InvalidInterpreterConfig, "interpret_external called in grammar mode");
  }
  const Endpoint endpoint = split_url(*config.endpoint);

  nlohmann::json request;
  request["command"] = std::string(text);
  request["zones"] = map.zone_names();

  httplib::Client client(endpoint.base);
  client.set_connection_timeout(config.timeout);
  client.set_read_timeout(config.timeout);
  client.set_write_timeout(config.timeout);
  const auto result = client.Post(endpoint.path, request.dump(), "application/json");

  if (!result) {
    if (config.fallback) return parse_command(text, map);
    throw Error(Errc::EndpointUnreachable,
                *config.endpoint + ": " + httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    if (config.fallback) return parse_command(text, map);
    throw Error(Errc::EndpointUnreachable,
                *config.endpoint + " answered HTTP " + std::to_string(result->status));
  }

  const auto body = nlohmann::json::parse(result->body, nullptr, /*allow_exceptions=*/false);
  const bool well_formed = body.is_object() && body.contains("pickup") && body["pickup"].is_string() &&
                           body.contains("drop") && body["drop"].is_string() &&
                           body.contains("item") && body["item"].is_string();
  if (!well_formed) {
    if (config.fallback) return parse_command(text, map);
    throw Error(Errc::MalformedResponse, result->body);
  }
  return make_task(text, map, body["pickup"].get<std::string>(), body["drop"].get<std::string>(),
                   normalize_item(body["item"].get<std::string>()));
}

TaskSpec interpret(std::string_view text, const SemanticMap& map, const InterpreterConfig& config) {
  if (config.mode == InterpreterMode::External) return interpret_external(text, map, config);
  return parse_command(text, map);
}

TaskSpec validate_task(const TaskSpec& task, const Workspace& workspace) {
  for (Point p : {task.pickup, task.drop}) {
    if (!is_finite(p) || !workspace.contains(p)) {
      throw Error(Errc::PointOutsideWorkspace,
                  "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
    }
  }
  if (task.pickup == task.drop) throw Error(Errc::SameZone, "pickup equals drop");
  return task;
}

}  // namespace deliver
