"""Turn procedure-labeled chunks into serializable procedure objects.

Each procedure-labeled chunk yields exactly one procedure: its items
become steps in document order with actionable/conditional flags. A step
whose node dominates another procedure-labeled chunk links to it through
childProcedureId; a non-procedure nested list under a list-item step is
folded in as sub-steps carrying parentStepId.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .annotate import ChunkAnnotation
from .chunker import Chunk, ChunkKind, ChunkSet
from .classifier import ChunkPrediction
from .docmodel import DocTree, Kind


class DanglingLink(RuntimeError):
    """A step references a procedure or step that does not exist."""


@dataclass(frozen=True)
class Step:
    step_id: str
    text: str
    actionable: bool
    conditional: bool
    parent_step_id: str | None = None
    child_procedure_id: str | None = None


@dataclass(frozen=True)
class Procedure:
    sequence_id: str
    goal: str
    step_list: tuple[Step, ...]


def _nearest_heading_text(tree: DocTree, node_id: int) -> str | None:
    current = tree.parent_of(node_id)
    while current is not None:
        node = tree.node(current)
        if node.kind is Kind.HEADING and node.text.strip():
            return node.text.strip()
        current = tree.parent_of(current)
    return None


def _goal_for(chunk: Chunk, tree: DocTree, annotation: ChunkAnnotation) -> str:
    context = annotation.context_text.strip()
    if context:
        return context
    heading = _nearest_heading_text(tree, chunk.item_node_ids[0])
    if heading:
        return heading
    return tree.node(tree.root).text.strip()


def _item_flags(annotation: ChunkAnnotation, node_id: int) -> tuple[bool, bool]:
    for item in annotation.items:
        if item.node_id == node_id:
            return item.actionable, item.conditional
    return False, False


def _document_position(tree: DocTree) -> dict[int, int]:
    return {node.id: i for i, node in enumerate(tree.preorder())}


def extract(predictions: list[ChunkPrediction], chunks: ChunkSet,
            tree: DocTree,
            annotations: dict[int, ChunkAnnotation]) -> list[Procedure]:
    """One procedure per procedure-labeled chunk, sequence ids in document
    order ("seq-1", "seq-2", ...)."""
    labels = {p.chunk_id: p.label for p in predictions}
    position = _document_position(tree)
    procedure_chunks = sorted(
        (cid for cid, label in labels.items() if label),
        key=lambda cid: position[chunks.chunks[cid].item_node_ids[0]])
    sequence_ids = {cid: f"seq-{i}" for i, cid in enumerate(procedure_chunks, 1)}

    procedures: list[Procedure] = []
    for chunk_id in procedure_chunks:
        chunk = chunks.chunks[chunk_id]
        annotation = annotations[chunk_id]
        steps: list[Step] = []
        counter = [0]

        def next_id() -> str:
            counter[0] += 1
            return f"s{counter[0]}"

        def child_link(node_id: int) -> str | None:
            for child_id in chunks.child_chunks.get(node_id, ()):
                if labels.get(child_id):
                    return sequence_ids[child_id]
            return None

        def add_item(node_id: int, item_annotation: ChunkAnnotation,
                     parent_step: str | None) -> None:
            actionable, conditional = _item_flags(item_annotation, node_id)
            link = child_link(node_id)
            step = Step(step_id=next_id(), text=tree.node(node_id).text,
                        actionable=actionable, conditional=conditional,
                        parent_step_id=parent_step, child_procedure_id=link)
            steps.append(step)
            if link is not None:
                return  # the nested content lives in its own procedure
            # fold a non-procedure nested list in as sub-steps
            for child_id in chunks.child_chunks.get(node_id, ()):
                child_chunk = chunks.chunks[child_id]
                if child_chunk.kind is ChunkKind.LIST and not labels.get(child_id):
                    child_annotation = annotations[child_id]
                    for sub_node in child_chunk.item_node_ids:
                        add_item(sub_node, child_annotation, step.step_id)

        for node_id in chunk.item_node_ids:
            add_item(node_id, annotation, None)

        procedures.append(Procedure(sequence_id=sequence_ids[chunk_id],
                                    goal=_goal_for(chunk, tree, annotation),
                                    step_list=tuple(steps)))
    _check_links(procedures)
    return procedures


def _check_links(procedures: list[Procedure]) -> None:
    known_sequences = {p.sequence_id for p in procedures}
    for procedure in procedures:
        seen: set[str] = set()
        for step in procedure.step_list:
            if step.parent_step_id is not None and step.parent_step_id not in seen:
                raise DanglingLink(
                    f"{procedure.sequence_id}/{step.step_id}: parent step "
                    f"{step.parent_step_id!r} not defined earlier")
            if (step.child_procedure_id is not None
                    and step.child_procedure_id not in known_sequences):
                raise DanglingLink(
                    f"{procedure.sequence_id}/{step.step_id}: child procedure "
                    f"{step.child_procedure_id!r} does not exist")
            seen.add(step.step_id)


def serialize(procedures: list[Procedure]) -> bytes:
    """Deterministic UTF-8 JSON: fixed key order, 2-space indent, LF line
    endings, optional fields omitted when absent."""
    payload = []
    for procedure in procedures:
        steps = []
        for step in procedure.step_list:
            entry: dict = {
                "stepId": step.step_id,
                "text": step.text,
                "actionable": step.actionable,
                "conditional": step.conditional,
            }
            if step.parent_step_id is not None:
                entry["parentStepId"] = step.parent_step_id
            if step.child_procedure_id is not None:
                entry["childProcedureId"] = step.child_procedure_id
            steps.append(entry)
        payload.append({
            "sequenceId": procedure.sequence_id,
            "goal": procedure.goal,
            "stepList": steps,
        })
    text = json.dumps(payload, indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def deserialize(data: bytes | str) -> list[Procedure]:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    out = []
    for raw in json.loads(data):
        steps = tuple(
            Step(step_id=s["stepId"], text=s["text"], actionable=s["actionable"],
                 conditional=s["conditional"],
                 parent_step_id=s.get("parentStepId"),
                 child_procedure_id=s.get("childProcedureId"))
            for s in raw["stepList"])
        out.append(Procedure(sequence_id=raw["sequenceId"], goal=raw["goal"],
                             step_list=steps))
    return out
