#pragma once

#include <string>

#include "eod/relation.hpp"

namespace eod::testing {

// Employee list: Salary is missing for t2.
inline const char* kEmployees =
    "ID,Rank,Years,Age,Salary\n"
    "t1,1,1,20,15000\n"
    "t2,2,1,21,\xE2\x8A\xA5\n"
    "t3,3,2,22,25000\n"
    "t4,4,3,25,30000\n";

// Sample table with nulls on D, F, G, H.
inline const char* kSample =
    "A,B,C,D,F,G,H\n"
    "4,1,1,8,20,10,1\n"
    "6,2,3,\xE2\x8A\xA5,30,\xE2\x8A\xA5,2\n"
    "5,3,5,10,\xE2\x8A\xA5,50,3\n"
    "7,4,5,12,40,100,\xE2\x8A\xA5\n";

inline Relation employees() { return load_relation(std::string_view(kEmployees)); }
inline Relation sample() { return load_relation(std::string_view(kSample)); }

inline AttrId id(const Relation& r, const char* name) { return r.find(name).value(); }

inline AttributeSet attrs(const Relation& r, std::initializer_list<const char*> names) {
    AttributeSet s;
    for (auto n : names) s.insert(id(r, n));
    return s;
}

}  // namespace eod::testing
