"""Request and response models for the HTTP wrapper."""

from pydantic import BaseModel, Field


class FieldInfoRequest(BaseModel):
    p: int = Field(ge=2)
    e: int = Field(default=1, ge=1)


class FieldInfoResponse(BaseModel):
    q: int
    modulus: str
    squares: list[int]


class GroupInfoRequest(BaseModel):
    q: int = Field(ge=2)


class GroupInfoResponse(BaseModel):
    order: int
    sylow_count: int
    short_blocks: int
    ambient_order: int


class ParaGenRequest(BaseModel):
    q: int = Field(ge=2)
    kind: str


class TextPayload(BaseModel):
    text: str


class VerifyResponse(BaseModel):
    ok: bool
    problems: list[str]


class StabilizerResponse(BaseModel):
    order: int
    orbit: int


class CloseRequest(BaseModel):
    unital: str  # "3", "4H", "4E", "5"
    kind: str | None = None
    para_text: str | None = None


class DesignVerifyRequest(BaseModel):
    text: str
    n: int = Field(ge=2)


class AutResponse(BaseModel):
    order: int


class CompareRequest(BaseModel):
    first: str
    second: str


class CompareResponse(BaseModel):
    isomorphic: bool


class TransReportRequest(BaseModel):
    unital: str
    kind: str


class TranslationEntry(BaseModel):
    center: int
    order: int
    structure: str | None
    is_translation_center: bool


class TransReportResponse(BaseModel):
    reports: list[TranslationEntry]


class ReproResponse(BaseModel):
    ok: bool
    lines: list[str]
