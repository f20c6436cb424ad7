#pragma once

#include <stdexcept>
#include <string>

namespace ghostlint {

// Base for every error this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

class EncryptedError : public Error {
public:
    explicit EncryptedError(const std::string& msg) : Error("encrypted document: " + msg) {}
};

class RenderError : public Error {
public:
    explicit RenderError(const std::string& msg) : Error("render error: " + msg) {}
};

class ExtractionError : public Error {
public:
    explicit ExtractionError(const std::string& msg) : Error("extraction error: " + msg) {}
};

class OcrEngineError : public Error {
public:
    explicit OcrEngineError(const std::string& msg) : Error("ocr engine error: " + msg) {}
};

class LoadError : public Error {
public:
    explicit LoadError(const std::string& msg) : Error("load error: " + msg) {}
};

class BrowserError : public Error {
public:
    explicit BrowserError(const std::string& msg) : Error("browser error: " + msg) {}
};

class UnsupportedFormat : public Error {
public:
    explicit UnsupportedFormat(const std::string& msg) : Error("unsupported format: " + msg) {}
};

class IncompatibleMethodFormat : public Error {
public:
    explicit IncompatibleMethodFormat(const std::string& msg)
        : Error("incompatible method/format: " + msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error("io error: " + msg) {}
};

} // namespace ghostlint
