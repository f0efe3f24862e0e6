#pragma once

#include <doctest.h>

#include "qnet/codec.hpp"
#include "qnet/freecat.hpp"

namespace testing {

inline qnet::QNet net_of(const char* json) { return qnet::decode_net(qnet::parse_json(json)); }

inline qnet::FreeElem elem(qnet::Theory q, const char* json) { return qnet::decode_elem(qnet::parse_json(json), q); }

template <class F>
qnet::ErrorKind error_kind(F&& f) {
    try {
        f();
    } catch (const qnet::Error& e) {
        return e.kind();
    }
    FAIL("expected a qnet::Error");
    return qnet::ErrorKind::invalid_argument;
}

} // namespace testing
