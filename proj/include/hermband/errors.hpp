#pragma once

#include <stdexcept>
#include <string>

namespace hermband {

// Error taxonomy shared by the library and the CLI driver. The CLI maps each
// kind to a distinct process exit code.
class error : public std::runtime_error {
public:
    enum class kind {
        domain,       // precondition violated
        capacity,     // order beyond the configured maximum
        integration,  // non-finite integrand or unusable quadrature input
        config,       // bad experiment configuration
        audit,        // an audited inequality failed
        io            // filesystem failure
    };

    error(kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    kind which() const noexcept { return kind_; }

private:
    kind kind_;
};

[[noreturn]] inline void throw_domain(const std::string& msg) {
    throw error(error::kind::domain, msg);
}
[[noreturn]] inline void throw_capacity(const std::string& msg) {
    throw error(error::kind::capacity, msg);
}
[[noreturn]] inline void throw_integration(const std::string& msg) {
    throw error(error::kind::integration, msg);
}
[[noreturn]] inline void throw_config(const std::string& msg) {
    throw error(error::kind::config, msg);
}
[[noreturn]] inline void throw_io(const std::string& msg) {
    throw error(error::kind::io, msg);
}

// Exit codes used by the CLI: 0 success, 2 precondition/config failure,
// 3 audit violation, 4 I/O failure.
inline int exit_code_for(const error& e) {
    switch (e.which()) {
        case error::kind::audit: return 3;
        case error::kind::io: return 4;
        default: return 2;
    }
}

}  // namespace hermband
