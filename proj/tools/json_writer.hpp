#pragma once

#include <cmath>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ptqes/format.hpp"

namespace ptqes::tools {

// Streaming JSON emitter with deterministic layout and the project's float
// contract (17 significant digits, lowercase exponent). Non-finite doubles
// become null.
class JsonWriter {
public:
    explicit JsonWriter(std::ostream& os) : os_(os) {}

    JsonWriter& begin_object() { return open('{'); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('['); }
    JsonWriter& end_array() { return close(']'); }

    // array of doubles in one call
    JsonWriter& values(const std::vector<double>& vs) {
        begin_array();
        for (double v : vs) value(v);
        return end_array();
    }

    JsonWriter& key(std::string_view k) {
        separate();
        os_ << '"' << k << "\": ";
        pending_value_ = true;
        return *this;
    }

    JsonWriter& value(double v) {
        separate();
        if (std::isfinite(v)) {
            os_ << format_float(v);
        } else {
            os_ << "null";
        }
        return *this;
    }

    JsonWriter& value(int v) {
        separate();
        os_ << v;
        return *this;
    }

    JsonWriter& value(long v) {
        separate();
        os_ << v;
        return *this;
    }

    JsonWriter& value(bool v) {
        separate();
        os_ << (v ? "true" : "false");
        return *this;
    }

    JsonWriter& value(const char* v) { return value(std::string_view(v)); }

    JsonWriter& value(std::string_view v) {
        separate();
        os_ << '"';
        for (char c : v) {
            switch (c) {
                case '"': os_ << "\\\""; break;
                case '\\': os_ << "\\\\"; break;
                case '\n': os_ << "\\n"; break;
                default: os_ << c;
            }
        }
        os_ << '"';
        return *this;
    }

    JsonWriter& null() {
        separate();
        os_ << "null";
        return *this;
    }

    template <class T>
    JsonWriter& field(std::string_view k, const T& v) {
        key(k);
        return value(v);
    }

    JsonWriter& finish() {
        os_ << '\n';
        return *this;
    }

private:
    JsonWriter& open(char c) {
        separate();
        os_ << c;
        stack_.push_back({c, true});
        return *this;
    }

    JsonWriter& close(char c) {
        os_ << c;
        stack_.pop_back();
        return *this;
    }

    void separate() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!stack_.empty()) {
            if (!stack_.back().first_item) os_ << ", ";
            stack_.back().first_item = false;
        }
    }

    struct Frame {
        char opener;
        bool first_item;
    };
    std::ostream& os_;
    std::vector<Frame> stack_;
    bool pending_value_ = false;
};

}  // namespace ptqes::tools
