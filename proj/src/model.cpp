#include "oddconn/model.hpp"

#include "oddconn/errors.hpp"
#include "oddconn/expr.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace oddconn {

const OddQuasiConnection& Model::require_connection() const {
    if (!connection)
        throw InputError("model '" + name + "' declares no connection data");
    return *connection;
}

namespace {

struct Token {
    std::string text;
    std::size_t column; // 1-based
};

struct RawLine {
    std::size_t number = 0;
    std::vector<Token> head; // tokens before '='
    bool has_expr = false;
    std::string expr;
    std::size_t expr_column = 0;
};

std::vector<RawLine> scan_lines(const std::string& text) {
    std::vector<RawLine> lines;
    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        RawLine raw;
        raw.number = number;
        const auto eq = line.find('=');
        const std::string head = eq == std::string::npos ? line : line.substr(0, eq);
        std::size_t i = 0;
        while (i < head.size()) {
            if (std::isspace(static_cast<unsigned char>(head[i]))) {
                ++i;
                continue;
            }
            std::size_t start = i;
            while (i < head.size() && !std::isspace(static_cast<unsigned char>(head[i])))
                ++i;
            raw.head.push_back(Token{head.substr(start, i - start), start + 1});
        }
        if (eq != std::string::npos) {
            raw.has_expr = true;
            raw.expr = line.substr(eq + 1);
            raw.expr_column = eq + 1;
        }
        if (!raw.head.empty() || raw.has_expr)
            lines.push_back(std::move(raw));
    }
    return lines;
}

class ModelParser {
  public:
    explicit ModelParser(std::string name) : name_(std::move(name)) {}

    Model run(const std::string& text) {
        for (const RawLine& line : scan_lines(text))
            handle(line);
        finalize_chart(0);
        return build();
    }

  private:
    [[noreturn]] void fail(const std::string& msg, std::size_t line, std::size_t column) {
        throw ParseError(msg, line, column);
    }

    void finalize_chart(std::size_t line) {
        if (chart_)
            return;
        if (even_names_.empty() && odd_names_.empty())
            fail("no chart declared", line ? line : 1, 1);
        chart_ = make_chart(even_names_, odd_names_);
    }

    std::size_t coord_index(const Token& tok, std::size_t line) {
        auto idx = chart_->index_of(tok.text);
        if (!idx)
            fail("unknown coordinate '" + tok.text + "'", line, tok.column);
        return *idx;
    }

    GradedPoly parse_expr(const RawLine& line) {
        if (!line.has_expr)
            fail("expected '= <expression>'", line.number, line.head.back().column);
        return parse_expression(chart_, line.expr, line.number, line.expr_column);
    }

    void require_parity(const GradedPoly& value, Parity want, const RawLine& line,
                        const std::string& what) {
        if (!value.has_parity(want))
            fail("parity violation: " + what + " must be " + to_string(want) + ", got '" +
                     value.str() + "'",
                 line.number, line.expr_column + 1);
    }

    void handle(const RawLine& line) {
        const Token& key = line.head.empty() ? Token{"", 1} : line.head[0];
        if (key.text == "chart") {
            if (chart_)
                fail("chart lines must precede all entries", line.number, key.column);
            if (line.head.size() < 2 || (line.head[1].text != "even" && line.head[1].text != "odd"))
                fail("expected 'chart even <names...>' or 'chart odd <names...>'", line.number,
                     key.column);
            auto& names = line.head[1].text == "even" ? even_names_ : odd_names_;
            if (!names.empty())
                fail("duplicate 'chart " + line.head[1].text + "' line", line.number, key.column);
            if (line.head.size() == 2)
                fail("chart line lists no coordinate names", line.number, line.head[1].column);
            for (std::size_t i = 2; i < line.head.size(); ++i) {
                if (line.head[i].text == "even" || line.head[i].text == "odd")
                    fail("coordinate name '" + line.head[i].text + "' is reserved", line.number,
                         line.head[i].column);
                names.push_back(line.head[i].text);
            }
            return;
        }

        finalize_chart(line.number);

        if (key.text == "rho") {
            if (line.head.size() != 3)
                fail("expected 'rho <a> <b> = <expr>'", line.number, key.column);
            const std::size_t a = coord_index(line.head[1], line.number);
            const std::size_t b = coord_index(line.head[2], line.number);
            if (!rho_keys_.insert(a * chart_->dim() + b).second)
                fail("duplicate rho entry", line.number, key.column);
            GradedPoly value = parse_expr(line);
            require_parity(value, chart_->parity(a) + chart_->parity(b) + Parity::odd(), line,
                           "rho " + line.head[1].text + " " + line.head[2].text);
            rho_.emplace(a * chart_->dim() + b, std::move(value));
            has_connection_data_ = true;
            return;
        }
        if (key.text == "gamma") {
            if (line.head.size() != 4)
                fail("expected 'gamma <b> <a> <c> = <expr>'", line.number, key.column);
            const std::size_t b = coord_index(line.head[1], line.number);
            const std::size_t a = coord_index(line.head[2], line.number);
            const std::size_t c = coord_index(line.head[3], line.number);
            const std::size_t flat = (b * chart_->dim() + a) * chart_->dim() + c;
            if (!gamma_keys_.insert(flat).second)
                fail("duplicate gamma entry", line.number, key.column);
            GradedPoly value = parse_expr(line);
            require_parity(value,
                           chart_->parity(a) + chart_->parity(b) + chart_->parity(c) + Parity::odd(),
                           line,
                           "gamma " + line.head[1].text + " " + line.head[2].text + " " +
                               line.head[3].text);
            gamma_.emplace(flat, std::move(value));
            has_connection_data_ = true;
            return;
        }
        if (key.text == "field") {
            if (line.head.size() != 3 && line.head.size() != 4)
                fail("expected 'field <name> [even|odd] <coord> = <expr>'", line.number, key.column);
            const std::string& fname = line.head[1].text;
            std::optional<Parity> declared;
            std::size_t coord_pos = 2;
            if (line.head.size() == 4) {
                if (line.head[2].text == "even")
                    declared = Parity::even();
                else if (line.head[2].text == "odd")
                    declared = Parity::odd();
                else
                    fail("expected 'even' or 'odd'", line.number, line.head[2].column);
                coord_pos = 3;
            }
            const std::size_t a = coord_index(line.head[coord_pos], line.number);
            auto& record = fields_[fname];
            if (record.components.empty()) {
                record.components.assign(chart_->dim(), GradedPoly(chart_));
                record.parity = declared;
                record.line = line.number;
            } else if (record.parity != declared) {
                fail("field '" + fname + "' declares inconsistent parities", line.number, key.column);
            }
            if (!record.seen.insert(a).second)
                fail("duplicate component for field '" + fname + "'", line.number, key.column);
            GradedPoly value = parse_expr(line);
            if (declared)
                require_parity(value, *declared + chart_->parity(a), line,
                               "field " + fname + " component " + line.head[coord_pos].text);
            record.components[a] = std::move(value);
            return;
        }
        if (key.text == "metric") {
            if (line.head.size() != 3)
                fail("expected 'metric <a> <b> = <expr>'", line.number, key.column);
            const std::size_t a = coord_index(line.head[1], line.number);
            const std::size_t b = coord_index(line.head[2], line.number);
            if (!metric_keys_.insert(a * chart_->dim() + b).second)
                fail("duplicate metric entry", line.number, key.column);
            GradedPoly value = parse_expr(line);
            require_parity(value, Parity::odd() + chart_->parity(a) + chart_->parity(b), line,
                           "metric " + line.head[1].text + " " + line.head[2].text);
            // Written G_{ab} is the value on (d_b, d_a): slot order (b, a).
            metric_.emplace(b * chart_->dim() + a, std::move(value));
            has_metric_ = true;
            return;
        }
        if (key.text == "change" || key.text == "inverse") {
            if (line.head.size() != 3)
                fail("expected '" + key.text + " <name> <coord> = <expr>'", line.number, key.column);
            const std::string& cname = line.head[1].text;
            const std::size_t a = coord_index(line.head[2], line.number);
            auto& record = changes_[cname];
            if (record.forward.empty()) {
                record.forward.assign(chart_->dim(), GradedPoly(chart_));
                record.inverse.assign(chart_->dim(), GradedPoly(chart_));
                for (std::size_t i = 0; i < chart_->dim(); ++i)
                    record.forward[i] = record.inverse[i] = GradedPoly::coordinate(chart_, i);
                record.line = line.number;
            }
            auto& seen = key.text == "change" ? record.seen_fwd : record.seen_inv;
            if (!seen.insert(a).second)
                fail("duplicate " + key.text + " entry for '" + cname + "'", line.number, key.column);
            GradedPoly value = parse_expr(line);
            require_parity(value, chart_->parity(a), line,
                           key.text + " " + cname + " " + line.head[2].text);
            (key.text == "change" ? record.forward : record.inverse)[a] = std::move(value);
            return;
        }
        fail("unknown key '" + key.text + "'", line.number, key.column);
    }

    Model build() {
        Model model;
        model.name = name_;
        model.chart = chart_;
        const std::size_t d = chart_->dim();
        std::vector<std::vector<GradedPoly>> rho_entries(d, std::vector<GradedPoly>(d, GradedPoly(chart_)));
        for (const auto& [key, value] : rho_)
            rho_entries[key / d][key % d] = value;
        std::vector<GradedPoly> gamma(d * d * d, GradedPoly(chart_));
        for (const auto& [key, value] : gamma_)
            gamma[key] = value;
        model.connection = OddQuasiConnection(OddEndomorphism(chart_, std::move(rho_entries)),
                                              std::move(gamma));
        for (auto& [fname, record] : fields_) {
            try {
                if (record.parity)
                    model.fields.emplace(fname,
                                         VectorField(chart_, record.components, *record.parity));
                else
                    model.fields.emplace(fname, VectorField(chart_, record.components));
            } catch (const ParityError& err) {
                throw ParseError(std::string(err.what()) + " (field '" + fname + "')", record.line, 1);
            }
            model.field_parities.emplace(fname, record.parity);
        }
        if (has_metric_) {
            std::vector<GradedPoly> comps(d * d, GradedPoly(chart_));
            for (const auto& [key, value] : metric_)
                comps[key] = value;
            model.metric = Rank2Covariant(chart_, 2, 0, Parity::odd(), std::move(comps));
        }
        for (auto& [cname, record] : changes_) {
            if (record.seen_inv.empty())
                throw ParseError("change '" + cname + "' has no inverse lines", record.line, 1);
            try {
                model.changes.emplace(
                    cname, CoordinateChange(chart_, chart_, record.forward, record.inverse));
            } catch (const Error& err) {
                throw ParseError("change '" + cname + "': " + err.what(), record.line, 1);
            }
        }
        return model;
    }

    struct FieldRecord {
        std::vector<GradedPoly> components;
        std::optional<Parity> parity;
        std::set<std::size_t> seen;
        std::size_t line = 0;
    };
    struct ChangeRecord {
        std::vector<GradedPoly> forward;
        std::vector<GradedPoly> inverse;
        std::set<std::size_t> seen_fwd;
        std::set<std::size_t> seen_inv;
        std::size_t line = 0;
    };

    std::string name_;
    std::vector<std::string> even_names_;
    std::vector<std::string> odd_names_;
    ChartPtr chart_;
    std::map<std::size_t, GradedPoly> rho_;
    std::map<std::size_t, GradedPoly> gamma_;
    std::map<std::size_t, GradedPoly> metric_;
    std::map<std::string, FieldRecord> fields_;
    std::map<std::string, ChangeRecord> changes_;
    std::set<std::size_t> rho_keys_, gamma_keys_, metric_keys_;
    bool has_connection_data_ = false;
    bool has_metric_ = false;
};

} // namespace

Model parse_model(const std::string& text, const std::string& name) {
    return ModelParser(name).run(text);
}

std::string serialize_model(const Model& model) {
    const Chart& chart = *model.chart;
    const std::size_t d = chart.dim();
    std::ostringstream os;
    if (chart.even_dim() > 0) {
        os << "chart even";
        for (std::size_t i = 0; i < chart.even_dim(); ++i)
            os << " " << chart.name(i);
        os << "\n";
    }
    if (chart.odd_dim() > 0) {
        os << "chart odd";
        for (std::size_t i = 0; i < chart.odd_dim(); ++i)
            os << " " << chart.name(chart.even_dim() + i);
        os << "\n";
    }
    if (model.connection) {
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                if (!model.connection->rho().entry(a, b).is_zero())
                    os << "rho " << chart.name(a) << " " << chart.name(b) << " = "
                       << model.connection->rho().entry(a, b).str() << "\n";
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t c = 0; c < d; ++c)
                    if (!model.connection->christoffel(b, a, c).is_zero())
                        os << "gamma " << chart.name(b) << " " << chart.name(a) << " " << chart.name(c)
                           << " = " << model.connection->christoffel(b, a, c).str() << "\n";
    }
    for (const auto& [fname, field] : model.fields) {
        std::string parity_token;
        auto it = model.field_parities.find(fname);
        std::optional<Parity> declared = it != model.field_parities.end() ? it->second : field.parity();
        if (declared)
            parity_token = " " + to_string(*declared);
        bool any = false;
        for (std::size_t a = 0; a < d; ++a)
            if (!field.component(a).is_zero()) {
                os << "field " << fname << parity_token << " " << chart.name(a) << " = "
                   << field.component(a).str() << "\n";
                any = true;
            }
        if (!any)
            os << "field " << fname << parity_token << " " << chart.name(0) << " = 0\n";
    }
    if (model.metric) {
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                const std::size_t slots[2] = {b, a};
                const GradedPoly& value = model.metric->component({slots, 2}, {});
                if (!value.is_zero())
                    os << "metric " << chart.name(a) << " " << chart.name(b) << " = " << value.str()
                       << "\n";
            }
    }
    for (const auto& [cname, change] : model.changes) {
        bool any = false;
        for (std::size_t a = 0; a < d; ++a) {
            if (change.forward(a) != GradedPoly::coordinate(model.chart, a)) {
                os << "change " << cname << " " << chart.name(a) << " = " << change.forward(a).str()
                   << "\n";
                any = true;
            }
        }
        for (std::size_t a = 0; a < d; ++a)
            if (change.inverse(a) != GradedPoly::coordinate(model.chart, a)) {
                os << "inverse " << cname << " " << chart.name(a) << " = " << change.inverse(a).str()
                   << "\n";
                any = true;
            }
        if (!any) {
            os << "change " << cname << " " << chart.name(0) << " = " << chart.name(0) << "\n";
            os << "inverse " << cname << " " << chart.name(0) << " = " << chart.name(0) << "\n";
        }
    }
    return os.str();
}

bool same_model_data(const Model& a, const Model& b) {
    if (*a.chart != *b.chart)
        return false;
    if (a.connection.has_value() != b.connection.has_value())
        return false;
    if (a.connection && !(*a.connection == *b.connection))
        return false;
    if (a.fields != b.fields)
        return false;
    if (a.metric.has_value() != b.metric.has_value())
        return false;
    if (a.metric && !(*a.metric == *b.metric))
        return false;
    if (a.changes.size() != b.changes.size())
        return false;
    for (const auto& [cname, ca] : a.changes) {
        auto it = b.changes.find(cname);
        if (it == b.changes.end())
            return false;
        for (std::size_t i = 0; i < a.chart->dim(); ++i)
            if (ca.forward(i) != it->second.forward(i) || ca.inverse(i) != it->second.inverse(i))
                return false;
    }
    return true;
}

Model from_catalog(const CatalogEntry& entry) {
    Model model;
    model.name = entry.name;
    model.chart = entry.chart;
    model.connection = entry.connection;
    model.metric = entry.metric;
    model.frame = entry.frame;
    model.frame_names = entry.frame_names;
    model.gammas = entry.gammas;
    for (const auto& [fname, field] : entry.named_fields) {
        model.fields.emplace(fname, field);
        model.field_parities.emplace(fname, field.parity());
    }
    return model;
}

Model load_model_or_catalog(const std::string& arg) {
    if (is_catalog_name(arg))
        return from_catalog(catalog_get(arg));
    std::ifstream in(arg);
    if (!in)
        throw InputError("'" + arg + "' is neither a catalog entry nor a readable model file");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_model(text.str(), arg);
}

} // namespace oddconn
