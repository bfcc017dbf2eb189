#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace autotamp {

enum class Role { System, User, Assistant };

std::string to_string(Role role);

struct Message {
  Role role;
  std::string content;
};

using Transcript = std::vector<Message>;

// Canonical hash used to key scripted fixtures: SHA-256 of the compact JSON
// [{"content":...,"role":...}, ...].
std::string transcript_sha256(const Transcript& transcript);
// Same, with the option list appended, for score_options replay.
std::string options_sha256(const Transcript& transcript, const std::vector<std::string>& options);

class LlmClient {
 public:
  virtual ~LlmClient() = default;
  // Next assistant message for the given conversation. Must not mutate the
  // transcript or carry state between calls.
  virtual std::string complete(const Transcript& transcript) = 0;
  // Log-likelihood proxy per option, higher is more likely.
  virtual std::vector<double> score_options(const Transcript& transcript,
                                            const std::vector<std::string>& options) = 0;
};

// Replays recorded (transcript hash -> response) pairs; any miss throws.
// Fixture file: JSON list of {"transcript_sha256": ..., "response_text": ...}.
// Option scores are stored as a JSON array in response_text.
class ScriptedClient : public LlmClient {
 public:
  ScriptedClient() = default;
  static ScriptedClient from_file(const std::string& path);
  static ScriptedClient from_json(const std::string& text);
  std::string to_json() const;

  void add(const std::string& sha, std::string response);
  void add_transcript(const Transcript& transcript, std::string response);
  void add_scores(const Transcript& transcript, const std::vector<std::string>& options,
                  const std::vector<double>& scores);
  size_t size() const { return responses_.size(); }

  std::string complete(const Transcript& transcript) override;
  std::vector<double> score_options(const Transcript& transcript,
                                    const std::vector<std::string>& options) override;

 private:
  std::map<std::string, std::string> responses_;
};

// Wraps a live client and captures every exchange as scripted fixtures.
class RecordingClient : public LlmClient {
 public:
  explicit RecordingClient(LlmClient& inner) : inner_(inner) {}
  std::string complete(const Transcript& transcript) override;
  std::vector<double> score_options(const Transcript& transcript,
                                    const std::vector<std::string>& options) override;
  const ScriptedClient& recorded() const { return recorded_; }

 private:
  LlmClient& inner_;
  ScriptedClient recorded_;
};

// OpenAI-style chat-completion endpoint over TLS. The API key is read from
// an environment variable; never exercised by tests.
class HttpChatClient : public LlmClient {
 public:
  HttpChatClient(std::string host, std::string path, std::string model,
                 std::string api_key_env = "AUTOTAMP_API_KEY");
  std::string complete(const Transcript& transcript) override;
  std::vector<double> score_options(const Transcript& transcript,
                                    const std::vector<std::string>& options) override;

 private:
  std::string host_, path_, model_, api_key_env_;
};

// "{name}" placeholder substitution; unknown placeholders are left verbatim.
std::string render_template(const std::string& text, const std::map<std::string, std::string>& slots);
std::string load_text_file(const std::string& path);

// Prompt template directory: AUTOTAMP_PROMPT_DIR env var, else the compiled-in
// repository path.
std::string default_prompt_dir();

}  // namespace autotamp
