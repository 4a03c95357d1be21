#include <declare/core.hpp>
#include <declare/rational.hpp>

#include <cctype>
#include <charconv>

namespace declare
{

std::string to_string( const Rational& r )
{
  return std::to_string( r.numerator() ) + "/" + std::to_string( r.denominator() );
}

namespace
{

std::int64_t parse_int( std::string_view digits, std::string_view whole )
{
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars( digits.data(), digits.data() + digits.size(), value );
  if ( digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() )
    throw InvalidArgument( "malformed rational '" + std::string( whole ) + "'" );
  return value;
}

} // namespace

Rational parse_rational( std::string_view text )
{
  if ( auto slash = text.find( '/' ); slash != std::string_view::npos )
  {
    const auto num = parse_int( text.substr( 0, slash ), text );
    const auto den = parse_int( text.substr( slash + 1 ), text );
    if ( den == 0 )
      throw InvalidArgument( "zero denominator in '" + std::string( text ) + "'" );
    return Rational( num, den );
  }
  const auto dot = text.find( '.' );
  if ( dot == std::string_view::npos )
    return Rational( parse_int( text, text ) );

  const auto int_part = text.substr( 0, dot );
  const auto frac_part = text.substr( dot + 1 );
  if ( frac_part.size() > 15 )
    throw InvalidArgument( "too many decimal places in '" + std::string( text ) + "'" );
  std::int64_t scale = 1;
  for ( std::size_t i = 0; i < frac_part.size(); ++i )
    scale *= 10;
  const std::int64_t whole = int_part.empty() ? 0 : parse_int( int_part, text );
  const std::int64_t frac = frac_part.empty() ? 0 : parse_int( frac_part, text );
  if ( whole < 0 || frac < 0 || ( !frac_part.empty() && !std::isdigit( static_cast<unsigned char>( frac_part[0] ) ) ) )
    throw InvalidArgument( "malformed rational '" + std::string( text ) + "'" );
  return Rational( whole * scale + frac, scale );
}

} // namespace declare
