#pragma once

#include <string>
#include <vector>

#include "hciz/rational.hpp"

namespace hciz {

// Integer partition with weakly decreasing positive rows.  This is the
// internal convention throughout; adapters pad/reverse where a formula
// wants increasing rows.
struct Partition {
    std::vector<int> rows;  // decreasing, all > 0

    int n() const {
        int s = 0;
        for (int r : rows) s += r;
        return s;
    }
    int num_rows() const { return static_cast<int>(rows.size()); }
    bool empty() const { return rows.empty(); }

    bool valid() const {
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i] <= 0) return false;
            if (i > 0 && rows[i] > rows[i - 1]) return false;
        }
        return true;
    }

    // Increasing convention padded to m rows: 0 <= l_1 <= ... <= l_m.
    std::vector<int> increasing_padded(int m) const {
        if (m < num_rows()) throw domain_error("padding shorter than partition");
        std::vector<int> out(m, 0);
        for (int i = 0; i < num_rows(); ++i) out[m - 1 - i] = rows[i];
        return out;
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.rows == b.rows; }
    friend bool operator<(const Partition& a, const Partition& b) { return a.rows < b.rows; }

    std::string str() const {
        std::string s;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(rows[i]);
        }
        return s;
    }
    static Partition parse(std::string_view s) {
        Partition p;
        size_t pos = 0;
        while (pos < s.size()) {
            size_t end = s.find(',', pos);
            if (end == std::string_view::npos) end = s.size();
            p.rows.push_back(std::stoi(std::string(s.substr(pos, end - pos))));
            pos = end + (end < s.size() ? 1 : 0);
        }
        if (!p.valid()) throw domain_error("invalid partition: '" + std::string(s) + "'");
        return p;
    }
};

// All partitions of n, each once, in decreasing lexicographic order:
// (n) first, (1,...,1) last.  partitions(0) = { empty partition }.
inline std::vector<Partition> partitions(int n) {
    if (n < 0) throw domain_error("partitions of a negative integer");
    std::vector<Partition> out;
    std::vector<int> cur;
    // depth-first: place the largest allowed part first
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(Partition{cur});
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

// Conjugacy class of S_n as a cycle-multiplicity vector:
// mult[p-1] = number of p-cycles, n = sum p * mult[p-1].
struct ClassVector {
    std::vector<int> mult;

    int n() const {
        int s = 0;
        for (size_t i = 0; i < mult.size(); ++i) s += static_cast<int>(i + 1) * mult[i];
        return s;
    }
    int num_cycles() const {
        int s = 0;
        for (int m : mult) s += m;
        return s;
    }
    int count(int p) const {
        return (p >= 1 && p <= static_cast<int>(mult.size())) ? mult[p - 1] : 0;
    }

    static ClassVector from_partition(const Partition& mu) {
        ClassVector a;
        if (mu.empty()) return a;
        a.mult.assign(mu.rows[0], 0);
        for (int r : mu.rows) a.mult[r - 1]++;
        return a;
    }
    Partition to_partition() const {
        Partition mu;
        for (int p = static_cast<int>(mult.size()); p >= 1; --p)
            for (int k = 0; k < mult[p - 1]; ++k) mu.rows.push_back(p);
        return mu;
    }

    // z_alpha = prod_p p^{a_p} a_p!; the class has n!/z_alpha elements.
    Int z() const {
        Int r = 1;
        for (size_t i = 0; i < mult.size(); ++i) {
            for (int k = 0; k < mult[i]; ++k) r *= static_cast<long>(i + 1);
            r *= factorial(mult[i]);
        }
        return r;
    }
    Int class_size() const { return factorial(n()) / z(); }

    friend bool operator==(const ClassVector& a, const ClassVector& b) {
        return a.mult == b.mult;
    }
    friend bool operator<(const ClassVector& a, const ClassVector& b) {
        return a.mult < b.mult;
    }
};

}  // namespace hciz
