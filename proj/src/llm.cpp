#include "autotamp/llm.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

namespace autotamp {

using nlohmann::json;

std::string to_string(Role role) {
  switch (role) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
  }
  return "user";
}

namespace {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

json transcript_json(const Transcript& transcript) {
  json arr = json::array();
  for (const Message& m : transcript) {
    arr.push_back({{"role", to_string(m.role)}, {"content", m.content}});
  }
  return arr;
}

}  // namespace

std::string transcript_sha256(const Transcript& transcript) {
  return sha256_hex(transcript_json(transcript).dump());
}

std::string options_sha256(const Transcript& transcript, const std::vector<std::string>& options) {
  json j;
  j["transcript"] = transcript_json(transcript);
  j["options"] = options;
  return sha256_hex(j.dump());
}

ScriptedClient ScriptedClient::from_file(const std::string& path) {
  return from_json(load_text_file(path));
}

ScriptedClient ScriptedClient::from_json(const std::string& text) {
  ScriptedClient client;
  json j = json::parse(text);
  for (const auto& entry : j) {
    client.responses_[entry.at("transcript_sha256").get<std::string>()] =
        entry.at("response_text").get<std::string>();
  }
  return client;
}

std::string ScriptedClient::to_json() const {
  json arr = json::array();
  for (const auto& [sha, response] : responses_) {
    arr.push_back({{"transcript_sha256", sha}, {"response_text", response}});
  }
  return arr.dump(2);
}

void ScriptedClient::add(const std::string& sha, std::string response) {
  responses_[sha] = std::move(response);
}

void ScriptedClient::add_transcript(const Transcript& transcript, std::string response) {
  add(transcript_sha256(transcript), std::move(response));
}

void ScriptedClient::add_scores(const Transcript& transcript, const std::vector<std::string>& options,
                                const std::vector<double>& scores) {
  add(options_sha256(transcript, options), json(scores).dump());
}

std::string ScriptedClient::complete(const Transcript& transcript) {
  const std::string sha = transcript_sha256(transcript);
  auto it = responses_.find(sha);
  if (it == responses_.end()) {
    std::string tail = transcript.empty() ? "" : transcript.back().content.substr(0, 200);
    throw std::runtime_error("scripted client cache miss for transcript " + sha +
                             " (last message: \"" + tail + "\")");
  }
  return it->second;
}

std::vector<double> ScriptedClient::score_options(const Transcript& transcript,
                                                  const std::vector<std::string>& options) {
  const std::string sha = options_sha256(transcript, options);
  auto it = responses_.find(sha);
  if (it == responses_.end())
    throw std::runtime_error("scripted client cache miss for option scores " + sha);
  json j = json::parse(it->second);
  std::vector<double> scores = j.get<std::vector<double>>();
  if (scores.size() != options.size())
    throw std::runtime_error("scripted score list length mismatch");
  return scores;
}

std::string RecordingClient::complete(const Transcript& transcript) {
  std::string response = inner_.complete(transcript);
  recorded_.add_transcript(transcript, response);
  return response;
}

std::vector<double> RecordingClient::score_options(const Transcript& transcript,
                                                   const std::vector<std::string>& options) {
  std::vector<double> scores = inner_.score_options(transcript, options);
  recorded_.add_scores(transcript, options, scores);
  return scores;
}

HttpChatClient::HttpChatClient(std::string host, std::string path, std::string model,
                               std::string api_key_env)
    : host_(std::move(host)), path_(std::move(path)), model_(std::move(model)),
      api_key_env_(std::move(api_key_env)) {}

std::string HttpChatClient::complete(const Transcript& transcript) {
  const char* key = std::getenv(api_key_env_.c_str());
  if (!key || !*key)
    throw std::runtime_error("HttpChatClient: environment variable " + api_key_env_ + " is not set");
  httplib::SSLClient client(host_);
  client.set_read_timeout(120, 0);
  json body;
  body["model"] = model_;
  body["messages"] = transcript_json(transcript);
  httplib::Headers headers{{"Authorization", std::string("Bearer ") + key}};
  auto res = client.Post(path_, headers, body.dump(), "application/json");
  if (!res) throw std::runtime_error("HttpChatClient: transport failure talking to " + host_);
  if (res->status != 200)
    throw std::runtime_error("HttpChatClient: HTTP " + std::to_string(res->status) + ": " + res->body);
  json reply = json::parse(res->body);
  return reply.at("choices").at(0).at("message").at("content").get<std::string>();
}

std::vector<double> HttpChatClient::score_options(const Transcript& transcript,
                                                  const std::vector<std::string>& options) {
  // Chat endpoints expose no per-option likelihoods; ask the model to rate
  // the options instead and read back a JSON array.
  Transcript asking = transcript;
  json opts = options;
  asking.push_back(Message{
      Role::User,
      "Rate each candidate action below with a log-likelihood style score (higher = better fit). "
      "Reply with a JSON array of numbers only, one per option, same order.\n" +
          opts.dump()});
  json j = json::parse(complete(asking));
  std::vector<double> scores = j.get<std::vector<double>>();
  if (scores.size() != options.size())
    throw std::runtime_error("HttpChatClient: score list length mismatch");
  return scores;
}

std::string render_template(const std::string& text, const std::map<std::string, std::string>& slots) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      const size_t close = text.find('}', i);
      if (close != std::string::npos) {
        const std::string name = text.substr(i + 1, close - i - 1);
        auto it = slots.find(name);
        if (it != slots.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

std::string load_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string default_prompt_dir() {
  if (const char* env = std::getenv("AUTOTAMP_PROMPT_DIR"); env && *env) return env;
#ifdef AUTOTAMP_PROMPT_DIR
  return AUTOTAMP_PROMPT_DIR;
#else
  return "prompts";
#endif
}

}  // namespace autotamp
