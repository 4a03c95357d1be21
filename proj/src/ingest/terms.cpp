#include "terms.hpp"

#include <cctype>

namespace declare::ingest
{

ParseError::ParseError( const std::string& message, std::optional<std::size_t> line )
    : Error( line ? "line " + std::to_string( *line ) + ": " + message : message ), line_( line )
{
}

} // namespace declare::ingest

namespace declare::ingest::detail
{

namespace
{

bool ident_start( char c )
{
  return std::isalpha( static_cast<unsigned char>( c ) ) || c == '_';
}

bool ident_char( char c )
{
  return std::isalnum( static_cast<unsigned char>( c ) ) || c == '_';
}

class Reader
{
public:
  explicit Reader( std::string_view text ) : text_( text ) {}

  std::vector<Clause> clauses()
  {
    std::vector<Clause> out;
    while ( skip(), pos_ < text_.size() )
    {
      Clause c;
      c.line = line_;
      c.head = term();
      skip();
      if ( peek( ":-" ) )
      {
        pos_ += 2;
        c.body.push_back( term() );
        while ( skip(), peek( "," ) )
        {
          ++pos_;
          c.body.push_back( term() );
        }
      }
      skip();
      if ( !peek( "." ) )
        fail( "expected '.' after " + describe( c.head ) );
      ++pos_;
      out.push_back( std::move( c ) );
    }
    return out;
  }

private:
  [[noreturn]] void fail( const std::string& message ) const { throw ParseError( message, line_ ); }

  bool peek( std::string_view s ) const { return text_.substr( pos_, s.size() ) == s; }

  void skip()
  {
    while ( pos_ < text_.size() )
    {
      const char c = text_[pos_];
      if ( c == '\n' )
      {
        ++line_;
        ++pos_;
      }
      else if ( std::isspace( static_cast<unsigned char>( c ) ) )
        ++pos_;
      else if ( c == '%' )
        while ( pos_ < text_.size() && text_[pos_] != '\n' )
          ++pos_;
      else
        return;
    }
  }

  Term term()
  {
    skip();
    if ( pos_ >= text_.size() )
      fail( "unexpected end of input" );
    Term t;
    const char c = text_[pos_];
    if ( std::isdigit( static_cast<unsigned char>( c ) ) )
    {
      const auto start = pos_;
      while ( pos_ < text_.size() && std::isdigit( static_cast<unsigned char>( text_[pos_] ) ) )
        ++pos_;
      t.kind = Term::Kind::Integer;
      t.text = std::string( text_.substr( start, pos_ - start ) );
      try
      {
        t.value = std::stoull( t.text );
      }
      catch ( const std::out_of_range& )
      {
        fail( "integer out of range: " + t.text );
      }
      return t;
    }
    if ( c == '"' )
    {
      ++pos_;
      t.kind = Term::Kind::String;
      while ( true )
      {
        if ( pos_ >= text_.size() || text_[pos_] == '\n' )
          fail( "unterminated string" );
        const char s = text_[pos_++];
        if ( s == '"' )
          break;
        if ( s == '\\' && pos_ < text_.size() )
        {
          const char e = text_[pos_++];
          t.text += e == 'n' ? '\n' : e == 't' ? '\t' : e;
        }
        else
          t.text += s;
      }
      return t;
    }
    if ( !ident_start( c ) )
      fail( std::string( "unexpected character '" ) + c + "'" );
    const auto start = pos_;
    while ( pos_ < text_.size() && ident_char( text_[pos_] ) )
      ++pos_;
    t.text = std::string( text_.substr( start, pos_ - start ) );
    t.kind = std::islower( static_cast<unsigned char>( c ) ) ? Term::Kind::Constant : Term::Kind::Variable;
    skip();
    if ( t.kind == Term::Kind::Constant && peek( "(" ) )
    {
      ++pos_;
      t.kind = Term::Kind::Compound;
      t.args.push_back( term() );
      while ( skip(), peek( "," ) )
      {
        ++pos_;
        t.args.push_back( term() );
      }
      if ( !peek( ")" ) )
        fail( "expected ')' in " + t.text + "(...)" );
      ++pos_;
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

} // namespace

std::vector<Clause> read_clauses( std::string_view text )
{
  return Reader( text ).clauses();
}

Activity activity_of( const Term& t, std::size_t line )
{
  if ( t.kind != Term::Kind::Constant && t.kind != Term::Kind::String )
    throw ParseError( "expected an activity, found " + describe( t ), line );
  if ( t.text.empty() )
    throw ParseError( "empty activity label", line );
  if ( t.text == wildcard_label )
    throw ParseError( "\"*\" is reserved and cannot name an activity", line );
  return Activity::intern( t.text );
}

std::string describe( const Term& t )
{
  switch ( t.kind )
  {
  case Term::Kind::Integer:
  case Term::Kind::Constant:
  case Term::Kind::Variable: return t.text;
  case Term::Kind::String: return "\"" + t.text + "\"";
  case Term::Kind::Compound:
  {
    std::string out = t.text + "(";
    for ( std::size_t i = 0; i < t.args.size(); ++i )
      out += ( i ? "," : "" ) + describe( t.args[i] );
    return out + ")";
  }
  }
  return "?";
}

std::string format_label( std::string_view label )
{
  const bool plain = !label.empty() && std::islower( static_cast<unsigned char>( label[0] ) ) &&
                     std::all_of( label.begin(), label.end(), ident_char );
  if ( plain )
    return std::string( label );
  std::string out = "\"";
  for ( char c : label )
  {
    if ( c == '"' || c == '\\' )
      out += '\\';
    if ( c == '\n' )
    {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

} // namespace declare::ingest::detail
