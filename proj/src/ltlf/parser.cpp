#include <declare/ltlf.hpp>

#include <cctype>

namespace declare::ltlf
{

ParseError::ParseError( const std::string& message, std::size_t offset )
    : Error( message + " at offset " + std::to_string( offset ) ), offset_( offset )
{
}

namespace
{

enum class Tok
{
  End,
  Ident,
  Quoted,
  LParen,
  RParen,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Next,
  WeakNext,
  Eventually,
  Globally,
  Until,
  WeakUntil,
  Release,
  True,
  False,
};

struct Token
{
  Tok kind = Tok::End;
  std::string text;
  std::size_t offset = 0;
};

bool ident_start( char c ) { return std::isalpha( static_cast<unsigned char>( c ) ) || c == '_'; }
bool ident_char( char c ) { return std::isalnum( static_cast<unsigned char>( c ) ) || c == '_'; }

Tok keyword( std::string_view word )
{
  if ( word == "X" ) return Tok::Next;
  if ( word == "Xw" ) return Tok::WeakNext;
  if ( word == "F" ) return Tok::Eventually;
  if ( word == "G" ) return Tok::Globally;
  if ( word == "U" ) return Tok::Until;
  if ( word == "W" ) return Tok::WeakUntil;
  if ( word == "R" ) return Tok::Release;
  if ( word == "true" ) return Tok::True;
  if ( word == "false" ) return Tok::False;
  return Tok::Ident;
}

class Lexer
{
public:
  explicit Lexer( std::string_view text ) : text_( text ) {}

  Token next()
  {
    while ( pos_ < text_.size() && std::isspace( static_cast<unsigned char>( text_[pos_] ) ) )
      ++pos_;
    Token tok;
    tok.offset = pos_;
    if ( pos_ >= text_.size() )
      return tok;

    const char c = text_[pos_];
    if ( ident_start( c ) )
    {
      const auto start = pos_;
      while ( pos_ < text_.size() && ident_char( text_[pos_] ) )
        ++pos_;
      tok.text = std::string( text_.substr( start, pos_ - start ) );
      tok.kind = keyword( tok.text );
      return tok;
    }
    if ( c == '"' )
    {
      ++pos_;
      while ( pos_ < text_.size() && text_[pos_] != '"' )
      {
        if ( text_[pos_] == '\\' && pos_ + 1 < text_.size() )
          ++pos_;
        tok.text += text_[pos_++];
      }
      if ( pos_ >= text_.size() )
        throw ParseError( "unterminated quoted label", tok.offset );
      ++pos_;
      tok.kind = Tok::Quoted;
      return tok;
    }

    auto match = [&]( std::string_view s ) {
      if ( text_.substr( pos_, s.size() ) == s )
      {
        pos_ += s.size();
        return true;
      }
      return false;
    };
    if ( match( "(" ) ) tok.kind = Tok::LParen;
    else if ( match( ")" ) ) tok.kind = Tok::RParen;
    else if ( match( "<->" ) ) tok.kind = Tok::Iff;
    else if ( match( "->" ) ) tok.kind = Tok::Implies;
    else if ( match( "&&" ) || match( "&" ) ) tok.kind = Tok::And;
    else if ( match( "||" ) || match( "|" ) ) tok.kind = Tok::Or;
    else if ( match( "!" ) ) tok.kind = Tok::Not;
    else
      throw ParseError( std::string( "unknown operator '" ) + c + "'", pos_ );
    return tok;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser
{
public:
  explicit Parser( std::string_view text ) : lexer_( text ) { advance(); }

  Formula parse()
  {
    auto f = parse_iff();
    if ( cur_.kind != Tok::End )
      throw ParseError( "unexpected token '" + describe( cur_ ) + "'", cur_.offset );
    return f;
  }

private:
  static std::string describe( const Token& t )
  {
    switch ( t.kind )
    {
    case Tok::End: return "end of input";
    case Tok::LParen: return "(";
    case Tok::RParen: return ")";
    case Tok::Not: return "!";
    case Tok::And: return "&";
    case Tok::Or: return "|";
    case Tok::Implies: return "->";
    case Tok::Iff: return "<->";
    default: return t.text;
    }
  }

  void advance() { cur_ = lexer_.next(); }

  Formula parse_iff()
  {
    auto lhs = parse_implies();
    if ( cur_.kind == Tok::Iff )
    {
      advance();
      return Formula::iff( lhs, parse_iff() );
    }
    return lhs;
  }

  Formula parse_implies()
  {
    auto lhs = parse_or();
    if ( cur_.kind == Tok::Implies )
    {
      advance();
      return Formula::implies( lhs, parse_implies() );
    }
    return lhs;
  }

  Formula parse_or()
  {
    std::vector<Formula> ops{ parse_and() };
    while ( cur_.kind == Tok::Or )
    {
      advance();
      ops.push_back( parse_and() );
    }
    return Formula::make_or( std::move( ops ) );
  }

  Formula parse_and()
  {
    std::vector<Formula> ops{ parse_temporal() };
    while ( cur_.kind == Tok::And )
    {
      advance();
      ops.push_back( parse_temporal() );
    }
    return Formula::make_and( std::move( ops ) );
  }

  Formula parse_temporal()
  {
    auto lhs = parse_unary();
    const auto kind = cur_.kind;
    if ( kind == Tok::Until || kind == Tok::WeakUntil || kind == Tok::Release )
    {
      advance();
      auto rhs = parse_temporal();
      if ( kind == Tok::Until )
        return Formula::until( lhs, rhs );
      if ( kind == Tok::WeakUntil )
        return Formula::weak_until( lhs, rhs );
      return Formula::release( lhs, rhs );
    }
    return lhs;
  }

  Formula parse_unary()
  {
    switch ( cur_.kind )
    {
    case Tok::Not: advance(); return Formula::make_not( parse_unary() );
    case Tok::Next: advance(); return Formula::next( parse_unary() );
    case Tok::WeakNext: advance(); return Formula::weak_next( parse_unary() );
    case Tok::Eventually: advance(); return Formula::eventually( parse_unary() );
    case Tok::Globally: advance(); return Formula::globally( parse_unary() );
    default: return parse_primary();
    }
  }

  Formula parse_primary()
  {
    const auto tok = cur_;
    switch ( tok.kind )
    {
    case Tok::LParen:
    {
      advance();
      auto f = parse_iff();
      if ( cur_.kind != Tok::RParen )
        throw ParseError( "expected ')'", cur_.offset );
      advance();
      return f;
    }
    case Tok::True: advance(); return Formula::top();
    case Tok::False: advance(); return Formula::bottom();
    case Tok::Ident:
    case Tok::Quoted:
      if ( tok.text.empty() )
        throw ParseError( "empty label", tok.offset );
      if ( tok.text == wildcard_label )
        throw ParseError( "\"*\" is reserved for the wildcard class", tok.offset );
      advance();
      return Formula::atom( tok.text );
    default:
      throw ParseError( "expected a formula, found '" + describe( tok ) + "'", tok.offset );
    }
  }

  Lexer lexer_;
  Token cur_;
};

int level( Op op )
{
  switch ( op )
  {
  case Op::Iff: return 1;
  case Op::Implies: return 2;
  case Op::Or: return 3;
  case Op::And: return 4;
  case Op::Until:
  case Op::Release:
  case Op::WeakUntil: return 5;
  case Op::Not:
  case Op::Next:
  case Op::WeakNext:
  case Op::Eventually:
  case Op::Globally: return 6;
  default: return 7;
  }
}

std::string atom_text( Activity a )
{
  const auto label = a.label();
  bool plain = !label.empty() && ident_start( label[0] ) && keyword( label ) == Tok::Ident;
  for ( char c : label )
    plain = plain && ident_char( c );
  if ( plain )
    return std::string( label );
  std::string out = "\"";
  for ( char c : label )
  {
    if ( c == '"' || c == '\\' )
      out += '\\';
    out += c;
  }
  return out + "\"";
}

void print( const Formula& f, NodeId id, std::string& out );

void print_child( const Formula& f, NodeId child, bool parens, std::string& out )
{
  if ( parens )
    out += '(';
  print( f, child, out );
  if ( parens )
    out += ')';
}

void print( const Formula& f, NodeId id, std::string& out )
{
  const auto& n = f.node( id );
  const int lvl = level( n.op );
  switch ( n.op )
  {
  case Op::True: out += "true"; return;
  case Op::False: out += "false"; return;
  case Op::Atom: out += atom_text( n.atom ); return;
  case Op::Not:
  case Op::Next:
  case Op::WeakNext:
  case Op::Eventually:
  case Op::Globally:
  {
    static constexpr std::string_view names[] = { "!", "X", "Xw", "F", "G" };
    const auto idx = n.op == Op::Not ? 0 : n.op == Op::Next ? 1 : n.op == Op::WeakNext ? 2 : n.op == Op::Eventually ? 3 : 4;
    out += names[idx];
    const bool parens = level( f.node( n.children[0] ).op ) < lvl;
    if ( !parens && n.op != Op::Not )
      out += ' ';
    print_child( f, n.children[0], parens, out );
    return;
  }
  case Op::And:
  case Op::Or:
    for ( std::size_t i = 0; i < n.children.size(); ++i )
    {
      if ( i > 0 )
        out += n.op == Op::And ? " & " : " | ";
      print_child( f, n.children[i], level( f.node( n.children[i] ).op ) <= lvl, out );
    }
    return;
  default:
  {
    std::string_view sym = n.op == Op::Implies ? " -> " : n.op == Op::Iff ? " <-> " : n.op == Op::Until ? " U " : n.op == Op::WeakUntil ? " W " : " R ";
    print_child( f, n.children[0], level( f.node( n.children[0] ).op ) <= lvl, out );
    out += sym;
    print_child( f, n.children[1], level( f.node( n.children[1] ).op ) < lvl, out );
    return;
  }
  }
}

} // namespace

Formula parse_formula( std::string_view text )
{
  return Parser( text ).parse();
}

std::string to_string( const Formula& f )
{
  std::string out;
  print( f, f.root(), out );
  return out;
}

} // namespace declare::ltlf
