"""Command-line front end: option parsing, dispatch and rendering."""
