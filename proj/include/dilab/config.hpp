#pragma once

#include <map>
#include <set>
#include <string>

namespace dilab {

// Flat key=value config. '#' starts a comment; blank lines ignored.
class KeyValueConfig {
public:
    static KeyValueConfig from_file(const std::string& path);
    static KeyValueConfig from_string(const std::string& text, const std::string& origin);

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key) const;
    long get_long(const std::string& key, long fallback) const;

    // Throws if a key was never read; catches typos in config files.
    void check_all_consumed() const;

    const std::string& origin() const { return origin_; }

private:
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> consumed_;
    std::string origin_;
};

}  // namespace dilab
